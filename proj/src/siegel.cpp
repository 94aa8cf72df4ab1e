#include "mollab/siegel.hpp"

#include <cmath>

namespace mollab {

namespace {

void check_y(Real y) {
  if (!(y >= 0 && y <= 1)) throw Error(ErrorCode::InvalidArgument, "y must lie in [0, 1]");
}

}  // namespace

Real step_function(Real y) {
  if (y < 0.5L) return 1;
  if (y > 0.5L) return 0;
  return 0.5L;
}

Real q_value(const ClosedFormSolution& sol, Real y) {
  check_y(y);
  const Real R = sol.mode().R;
  if (y >= 0.5L) return sol.value(std::min(R, 2 * R * (y - 0.5L)));
  return sol.mode().beta - sol.value(std::min(R, 2 * R * (0.5L - y)));
}

Real q_value(Real R, Real y, const QuadConfig& cfg) {
  if (!(R > 0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  return q_value(ClosedFormSolution(make_mode_special(std::sqrt(0.6L) / R), cfg), y);
}

std::vector<Real> step_limit_scan(Real y0, const std::vector<Real>& R_list, const QuadConfig& cfg) {
  check_y(y0);
  for (std::size_t i = 1; i < R_list.size(); ++i) {
    if (!(R_list[i] > R_list[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "R list must be increasing");
    }
  }
  std::vector<Real> out;
  out.reserve(R_list.size());
  for (Real R : R_list) out.push_back(q_value(R, y0, cfg));
  return out;
}

std::map<std::string, Real> asymptotic_constants() {
  const Real s5 = std::sqrt(5.0L);
  const Real phi = 0.5L * (1 + s5);
  std::map<std::string, Real> out;
  out["gamma_ratio"] = gamma_real(1 + s5 / 2) * gamma_real(s5 / 2) / (gamma_real(phi) * gamma_real(phi));
  out["csc"] = 1 / sin_pi(s5 / 2);
  const Real t = 30;
  const NegExpHyp2F1 Fp(0.5L, phi, 0.5L + phi);
  const NegExpHyp2F1 Fm(0.5L, -1 / phi, 0.5L - 1 / phi);
  out["Fp_measured"] = Fp.value(t, 1);
  out["Fm_measured"] = Fm.value(t, -(s5 - 1));
  const Components comp(-1);
  const auto [v1, v2] = comp.v(t);
  const Real scale = std::exp(0.5L * (3 - s5) * t);
  out["v1_measured"] = v1 * scale;
  out["v2_measured"] = v2 * scale;
  return out;
}

Real growth_envelope(const ClosedFormSolution& sol, std::size_t n) {
  const Real lambda = sol.components().growth();
  const Real R = sol.mode().R;
  const auto pts = sol.sample(n);
  Real worst = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const Real t = R * static_cast<Real>(i) / static_cast<Real>(n);
    worst = std::max(worst, std::fabs(pts[i].S) * std::exp(-lambda * t));
  }
  return worst;
}

}  // namespace mollab
