#include <cmath>
#include <sstream>

#include "mollab/hyp2f1.hpp"

namespace mollab {

namespace {

constexpr Real kPi = 3.141592653589793238462643383279502884L;

bool is_pole(Real s) { return s <= 0 && s == std::floor(s); }

[[noreturn]] void throw_pole(Real s) {
  std::ostringstream os;
  os << "Gamma has a pole at s = " << static_cast<double>(s);
  throw Error(ErrorCode::Pole, os.str());
}

// lgammal without touching the global signgam; only called for s > 0.
Real lgamma_positive(Real s) {
#if defined(__GLIBC__)
  int sign = 1;
  return ::lgammal_r(s, &sign);
#else
  return std::lgamma(s);
#endif
}

}  // namespace

Real sin_pi(Real x) {
  Real r = std::fmod(x, 2.0L);
  if (r < 0) r += 2;
  Real sign = 1;
  if (r >= 1) {
    r -= 1;
    sign = -1;
  }
  if (r == 0) return 0;
  if (r > 0.5L) r = 1 - r;
  return sign * std::sin(kPi * r);
}

Real gamma_real(Real s) {
  if (is_pole(s)) throw_pole(s);
  // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
  if (s < 0.5L) return kPi / (sin_pi(s) * gamma_real(1 - s));
  return std::tgamma(s);
}

SignedLog log_gamma_signed(Real s) {
  if (is_pole(s)) throw_pole(s);
  if (s >= 0.5L) return {lgamma_positive(s), 1};
  const Real sp = sin_pi(s);
  return {std::log(kPi) - std::log(std::fabs(sp)) - lgamma_positive(1 - s),
          sp > 0 ? 1 : -1};
}

Real log_gamma(Real s) { return log_gamma_signed(s).log_abs; }

SignedLog log_rgamma_signed(Real s) {
  if (is_pole(s)) return {0, 0};
  const SignedLog g = log_gamma_signed(s);
  return {-g.log_abs, g.sign};
}

}  // namespace mollab
