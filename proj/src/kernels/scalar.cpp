#include <cmath>

#include "mollab/kernels.hpp"

namespace mollab::kernels::scalar {

double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dd = c1 * d[i] * d[i];
    const double r = beta - s[i];
    acc += wt[i] * (ep[i] * (c0 * s[i] * s[i] + dd) + em[i] * (c0 * r * r + dd));
  }
  return acc;
}

Norms diff_norms(const double* a, const double* b, std::size_t n) {
  Norms out;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = a[i] - b[i];
    out.sup = std::fmax(out.sup, std::fabs(e));
    out.sumsq += e * e;
  }
  return out;
}

double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c) {
  double worst = 0;
  const double ih2 = 1 / (h * h);
  const double i2h = 1 / (2 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = (s[i + 1] - 2 * s[i] + s[i - 1]) * ih2 +
                     tanh_t[i] * (s[i + 1] - s[i - 1]) * i2h + c * s[i] - src[i];
    worst = std::fmax(worst, std::fabs(r));
  }
  return worst;
}

}  // namespace mollab::kernels::scalar
