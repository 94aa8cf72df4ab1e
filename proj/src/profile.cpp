#include "mollab/profile.hpp"

#include "mollab/error.hpp"

namespace mollab {

std::vector<double> uniform_grid(double R, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one interval");
  std::vector<double> g(n + 1);
  const long double h = static_cast<long double>(R) / n;
  for (std::size_t i = 0; i <= n; ++i) g[i] = static_cast<double>(h * i);
  g[n] = R;
  return g;
}

std::vector<double> difference_derivative(const std::vector<double>& t,
                                          const std::vector<double>& s) {
  const std::size_t n = t.size();
  if (n < 3 || s.size() != n) {
    throw Error(ErrorCode::InvalidProfile, "derivative needs >= 3 matching nodes");
  }
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (s[i + 1] - s[i - 1]) / (t[i + 1] - t[i - 1]);
  const double h0 = t[1] - t[0], hn = t[n - 1] - t[n - 2];
  d[0] = (-3 * s[0] + 4 * s[1] - s[2]) / (2 * h0);
  d[n - 1] = (3 * s[n - 1] - 4 * s[n - 2] + s[n - 3]) / (2 * hn);
  return d;
}

}  // namespace mollab
