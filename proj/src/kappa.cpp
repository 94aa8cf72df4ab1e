#include "mollab/kappa.hpp"

#include <cmath>
#include <sstream>

#include "mollab/kernels.hpp"

namespace mollab {

namespace {

std::string real_tag(Real x) {
  std::ostringstream os;
  os.precision(10);
  os << static_cast<double>(x);
  return os.str();
}

bool is_uniform(const std::vector<double>& g) {
  if (g.size() < 2) return false;
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (std::fabs(g[i] - g[i - 1] - h) > 1e-9 * h) return false;
  }
  return true;
}

}  // namespace

MollifierSpec MollifierSpec::linear() { return {}; }

MollifierSpec MollifierSpec::sinh(Real r) {
  MollifierSpec s;
  s.kind = MollifierKind::Sinh;
  s.r = r;
  const auto [B, C] = mollifier_moments(s);
  s.B = B;
  s.C = C;
  return s;
}

MollifierSpec MollifierSpec::custom(Real B, Real C) {
  MollifierSpec s;
  s.kind = MollifierKind::Custom;
  s.B = B;
  s.C = C;
  if (!(B > 0 && C > 0)) throw Error(ErrorCode::InvalidArgument, "custom moments must be positive");
  return s;
}

std::string MollifierSpec::tag() const {
  switch (kind) {
    case MollifierKind::Linear: return "linear";
    case MollifierKind::Sinh: return "sinh:" + real_tag(r);
    case MollifierKind::Custom: return "custom:" + real_tag(B) + ":" + real_tag(C);
  }
  return "unknown";
}

std::pair<Real, Real> mollifier_moments(const MollifierSpec& spec) {
  switch (spec.kind) {
    case MollifierKind::Linear: return {1.0L / 3, 1};
    case MollifierKind::Custom: return {spec.B, spec.C};
    case MollifierKind::Sinh: break;
  }
  const Real r = spec.r;
  if (!(r > 0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidR, "sinh mollifier needs r > 0");
  if (r < 1e-2L) {
    // Taylor expansions; the closed forms cancel badly here.
    const Real r2 = r * r;
    const Real B = 1.0L / 3 - r2 * (2.0L / 45 - r2 * (2.0L / 315 - r2 * 4.0L / 4725));
    const Real C = 1 + r2 * r2 * (1.0L / 45 - r2 * 4.0L / 945);
    return {B, C};
  }
  const Real csch = 1 / std::sinh(r);
  const Real coth = std::cosh(r) * csch;
  const Real B = (coth - r * csch * csch) / (2 * r);
  const Real C = 0.5L * r * csch * (std::cosh(r) + r * csch);
  return {B, C};
}

std::string_view to_string(KappaRoute route) {
  return route == KappaRoute::Exact ? "exact" : "asymptotic";
}

Real k_closed_form(const ClosedFormSolution& sol, KappaRoute route) {
  const ModeParams& m = sol.mode();
  const Real R = m.R, beta = m.beta;
  Real integral;
  if (route == KappaRoute::Asymptotic) {
    integral = sol.exp_weighted_integral_affine(sol.infinite_parts());
  } else {
    integral = sol.exp_weighted_integral().value;
  }
  Real K = m.c0 * beta * beta * (-std::expm1(-R)) - m.c1 * beta * sol.s_prime_zero() -
           m.c0 * beta * integral;
  if (beta != 1) K += 2 * (beta - 1) * m.c1 * sol.s_prime_R() * std::cosh(R);
  return K;
}

Real log_c_from_k(const ModeParams& m, Real K) {
  const Real R = m.R;
  const Real b2 = (m.beta - 1) * (m.beta - 1);
  const Real em = std::exp(-R), ep = std::exp(R);
  // c e^{-R}, with every term carrying at most one factor e^R.
  const Real scaled = 0.5L * (em + ep * b2) + (m.c1 / (4 * R)) * (ep * b2 - em) + K / (2 * R);
  if (!(scaled > 0)) {
    std::ostringstream os;
    os << "c(P,Q,R) e^-R = " << static_cast<double>(scaled) << " is not positive";
    throw Error(ErrorCode::NonPositiveArgument, os.str());
  }
  return R + std::log(scaled);
}

KappaResult kappa_from_k(const ModeParams& m, Real K) {
  KappaResult r;
  r.theta = m.theta;
  r.R = m.R;
  r.beta = m.beta;
  r.mode_tag = m.kind;
  r.non_convex = m.non_convex;
  r.log_c = log_c_from_k(m, K);
  r.c_pqr = std::exp(r.log_c);
  r.kappa = 1 - r.log_c / m.R;
  return r;
}

Real c_pqr_special(Real theta, KappaRoute route, const QuadConfig& cfg) {
  return kappa_special(theta, route, cfg).c_pqr;
}

KappaResult kappa_special(Real theta, KappaRoute route, const QuadConfig& cfg) {
  const ModeParams m = make_mode_special(theta);
  const ClosedFormSolution sol(m, cfg);
  const Real R = m.R;
  Real integral;
  if (route == KappaRoute::Asymptotic) {
    integral = sol.exp_weighted_integral_affine(sol.infinite_parts());
  } else {
    integral = sol.exp_weighted_integral().value;
  }
  // c = 1/2 + (-1 + 2 e^R X) / sqrt(15),  X = 1 - e^-R - S'(0) - int e^-t S.
  const Real X = -std::expm1(-R) - sol.s_prime_zero() - integral;
  const Real em = std::exp(-R);
  const Real scaled = 0.5L * em + (2 * X - em) / std::sqrt(15.0L);
  if (!(scaled > 0)) {
    throw Error(ErrorCode::NonPositiveArgument, "c(P,Q,R) is not positive");
  }
  KappaResult r;
  r.theta = theta;
  r.R = R;
  r.beta = 1;
  r.mode_tag = ModeKind::Special;
  r.route = route;
  r.log_c = R + std::log(scaled);
  r.c_pqr = std::exp(r.log_c);
  r.kappa = 1 - r.log_c / R;
  return r;
}

KappaResult kappa_general(Real theta, Real R, Real beta, const MollifierSpec& spec,
                          const QuadConfig& cfg) {
  const auto [B, C] = mollifier_moments(spec);
  const ModeParams m = make_mode_general(theta, R, beta, B, C);
  const ClosedFormSolution sol(m, cfg);
  KappaResult r = kappa_from_k(m, k_closed_form(sol, KappaRoute::Exact));
  r.mollifier = spec.tag();
  return r;
}

Real k_functional_direct(const SolutionProfile& p, const ModeParams& m, const KDirectConfig& cfg) {
  const std::size_t n1 = p.size();
  if (n1 < 5 || p.values.size() != n1 || p.derivs.size() != n1) {
    throw Error(ErrorCode::InvalidProfile, "profile needs >= 5 nodes with values and derivatives");
  }
  if (!is_uniform(p.grid) || (n1 - 1) % 2 != 0) {
    throw Error(ErrorCode::InvalidProfile, "profile grid must be uniform with an even interval count");
  }
  if (std::fabs(p.values.front() - static_cast<double>(m.beta / 2)) > 1e-9) {
    throw Error(ErrorCode::InvalidProfile, "S(0) must equal beta/2");
  }
  if (std::fabs(p.values.back() - static_cast<double>(m.beta - 1)) > 1e-9) {
    throw Error(ErrorCode::InvalidProfile, "S(R) must equal beta - 1");
  }
  const double h = (p.grid.back() - p.grid.front()) / static_cast<double>(n1 - 1);
  std::vector<double> ep(n1), em(n1), wt(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    ep[i] = std::exp(p.grid[i]);
    em[i] = std::exp(-p.grid[i]);
    wt[i] = (i == 0 || i + 1 == n1) ? 0.5 * h : h;
  }
  const auto c0 = static_cast<double>(m.c0), c1 = static_cast<double>(m.c1);
  const auto beta = static_cast<double>(m.beta);
  const double fine = kernels::functional_sum(ep.data(), em.data(), p.values.data(),
                                              p.derivs.data(), wt.data(), n1, c0, c1, beta);
  // Coarse trapezoid on every other node.
  std::vector<double> cep, cem, cs, cd, cwt;
  const std::size_t nc = (n1 - 1) / 2 + 1;
  for (std::size_t i = 0; i < n1; i += 2) {
    cep.push_back(ep[i]);
    cem.push_back(em[i]);
    cs.push_back(p.values[i]);
    cd.push_back(p.derivs[i]);
    cwt.push_back((i == 0 || i + 1 == n1) ? h : 2 * h);
  }
  const double coarse = kernels::functional_sum(cep.data(), cem.data(), cs.data(), cd.data(),
                                                cwt.data(), nc, c0, c1, beta);
  const double extrapolated = fine + (fine - coarse) / 3;
  if (std::fabs(extrapolated - fine) > cfg.rel_tol * std::fabs(extrapolated)) {
    std::ostringstream os;
    os << "trapezoid refinement gap " << std::fabs(extrapolated - fine) << " exceeds tolerance";
    throw Error(ErrorCode::GridTooCoarse, os.str());
  }
  return extrapolated;
}

Real j_functional_direct(const ClosedFormSolution& sol, Real B, Real C) {
  const ModeParams& m = sol.mode();
  const Real R = m.R, beta = m.beta, theta = m.theta;
  if (!(theta > 0)) throw Error(ErrorCode::InvalidArgument, "J(Q) needs theta > 0");
  // y >= 1/2: Q = S(t), Q' = 2R S'(t);  y < 1/2: Q = beta - S(t), Q' = 2R S'(t),
  // with t = 2R |y - 1/2|.
  auto integrand = [&](Real y) {
    const Real t = 2 * R * std::fabs(y - 0.5L);
    const Real S = sol.value(t);
    const Real dS = sol.derivative(t);
    const Real Q = y >= 0.5L ? S : beta - S;
    const Real dQ = 2 * R * dS;
    const Real e = std::exp(R * y);
    const Real w = e * Q;
    const Real dw = e * (R * Q + dQ);
    return C / theta * w * w + theta * B * dw * dw;
  };
  QuadConfig q = sol.quad_config();
  q.abs_tol = 1e-30L;
  return integrate(integrand, 0, 0.5L, q).value + integrate(integrand, 0.5L, 1, q).value;
}

Real c_pqr_from_j(const ClosedFormSolution& sol, Real B, Real C) {
  const ModeParams& m = sol.mode();
  const Real b2 = (m.beta - 1) * (m.beta - 1);
  return 0.5L * (1 + std::exp(2 * m.R) * b2) + j_functional_direct(sol, B, C);
}

}  // namespace mollab
