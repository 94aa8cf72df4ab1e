#include "mollab/varsol.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <tuple>

namespace mollab {

namespace {

using Legendre = boost::math::quadrature::gauss<Real, 10>;
using ShortLegendre = boost::math::quadrature::gauss<Real, 5>;

// Fixed 10-point Gauss-Legendre rule. The v-integrands are analytic within
// pi/2 of the real axis, so on panels of width <= 0.25 this is exact to
// rounding.
template <class F>
std::pair<Real, Real> legendre(F&& f, Real a, Real b) {
  const auto& x = Legendre::abscissa();
  const auto& w = Legendre::weights();
  const Real mid = 0.5L * (a + b);
  const Real half = 0.5L * (b - a);
  Real s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto [l1, l2] = f(mid - half * x[i]);
    const auto [r1, r2] = f(mid + half * x[i]);
    s1 += w[i] * (l1 + r1);
    s2 += w[i] * (l2 + r2);
  }
  return {half * s1, half * s2};
}

// Five-point rule for the short steps between neighbouring grid nodes.
template <class F>
std::pair<Real, Real> short_legendre(F&& f, Real a, Real b) {
  const auto& x = ShortLegendre::abscissa();
  const auto& w = ShortLegendre::weights();
  const Real mid = 0.5L * (a + b);
  const Real half = 0.5L * (b - a);
  auto [s1, s2] = f(mid);
  s1 *= w[0];
  s2 *= w[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const auto [l1, l2] = f(mid - half * x[i]);
    const auto [r1, r2] = f(mid + half * x[i]);
    s1 += w[i] * (l1 + r1);
    s2 += w[i] * (l2 + r2);
  }
  return {half * s1, half * s2};
}

void check_c(Real c) {
  if (!(c < 0.25L)) {
    std::ostringstream os;
    os << "c = " << static_cast<double>(c) << " must be < 1/4";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const Real half_root = 0.5L * std::sqrt(1 - 4 * c);
  if (std::fabs(half_root - std::nearbyint(half_root)) < 1e-12L) {
    std::ostringstream os;
    os << "sqrt(1 - 4c) is an even integer for c = " << static_cast<double>(c);
    throw Error(ErrorCode::DegenerateParameters, os.str());
  }
}

void check_positive(Real x, const char* name) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

Real phi_of(Real c) { return 0.5L * (1 + std::sqrt(1 - 4 * c)); }

ModeParams make_mode_special(Real theta) {
  check_positive(theta, "theta");
  ModeParams m;
  m.kind = ModeKind::Special;
  m.theta = theta;
  m.R = std::sqrt(0.6L) / theta;
  m.beta = 1;
  m.c = -1;
  m.c0 = m.c1 = 4 / (5 * theta);
  m.phi_c = phi_of(-1);
  return m;
}

ModeParams make_mode_general(Real theta, Real R, Real beta, Real B, Real C) {
  check_positive(theta, "theta");
  check_positive(R, "R");
  check_positive(B, "B");
  check_positive(C, "C");
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be finite");
  ModeParams m;
  m.kind = ModeKind::General;
  m.theta = theta;
  m.R = R;
  m.beta = beta;
  m.c0 = C / theta - theta * B * R * R;
  m.c1 = 4 * theta * B * R * R;
  m.c = -m.c0 / m.c1;
  check_c(m.c);
  m.phi_c = phi_of(m.c);
  m.non_convex = m.c0 < 0;
  return m;
}

ModeParams make_mode_ode(Real R, Real c, Real beta) {
  check_positive(R, "R");
  check_c(c);
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be finite");
  ModeParams m;
  m.kind = ModeKind::Ode;
  m.R = R;
  m.beta = beta;
  m.c = c;
  m.c1 = 1;
  m.c0 = -c;
  m.phi_c = phi_of(c);
  m.non_convex = m.c0 < 0;
  return m;
}

// ---------------------------------------------------------------- Components

Components::Components(Real c, const EvalConfig& cfg) : c_(c) {
  check_c(c);
  phi_ = phi_of(c);
  m_ = c / phi_;
  root_ = 2 * phi_ - 1;
  Fp_ = NegExpHyp2F1(0.5L, phi_, 0.5L + phi_, cfg);
  Fm_ = NegExpHyp2F1(0.5L, m_, 0.5L + m_, cfg);
  F1p_ = NegExpHyp2F1(0.5L, 1 + phi_, 0.5L + phi_, cfg);
  F1m_ = NegExpHyp2F1(1.5L, m_, 0.5L + m_, cfg);
  g1_0_ = Fm_.value(0);
  g2_0_ = Fp_.value(0);
  if (g2_0_ == 0) throw Error(ErrorCode::DegenerateParameters, "g2(0) vanishes");
}

Real Components::g1(Real t, Real shift) const { return Fm_.value(t, m_ + shift); }
Real Components::g2(Real t, Real shift) const { return Fp_.value(t, phi_ + shift); }

Real Components::g1_prime(Real t, Real shift) const {
  return Fm_.derivative(t, m_ + shift) - shift * g1(t, shift);
}

Real Components::g2_prime(Real t, Real shift) const {
  return Fp_.derivative(t, phi_ + shift) - shift * g2(t, shift);
}

Real Components::f(Real t, Real shift) const {
  return g1(t, shift) - (g1_0_ / g2_0_) * g2(t, shift);
}

Real Components::f_prime(Real t, Real shift) const {
  return g1_prime(t, shift) - (g1_0_ / g2_0_) * g2_prime(t, shift);
}

Real Components::g0(Real t, Real shift) const { return g2(t, shift) / (2 * g2_0_); }
Real Components::g0_prime(Real t, Real shift) const { return g2_prime(t, shift) / (2 * g2_0_); }

Real Components::wronskian(Real t) const { return root_ / (2 * std::cosh(t)); }

Real Components::wronskian_direct(Real t) const {
  return std::exp(t) * (2 * phi_ * Fm_.value(t) * F1p_.value(t) - Fp_.value(t) * F1m_.value(t));
}

std::pair<Real, Real> Components::v(Real u) const {
  // W(u) (1 + e^{2u}) = sqrt(1 - 4c) e^u.
  if (!(root_ > 0)) throw Error(ErrorCode::WronskianVanished, "Wronskian vanishes");
  return {g2(u, -1) / root_, -g1(u, -1) / root_};
}

ComponentValues Components::at(Real t) const {
  ComponentValues cv;
  cv.Fp = Fp_.value(t);
  cv.Fm = Fm_.value(t);
  cv.F1p = F1p_.value(t);
  cv.F1m = F1m_.value(t);
  cv.g1 = g1(t);
  cv.g2 = g2(t);
  cv.f = f(t);
  cv.g0 = g0(t);
  cv.W = wronskian(t);
  return cv;
}

// -------------------------------------------------------- ClosedFormSolution

ClosedFormSolution::ClosedFormSolution(const ModeParams& mode, const QuadConfig& qcfg,
                                       const EvalConfig& ecfg)
    : mode_(mode), qcfg_(qcfg), comp_(mode.c, ecfg) {
  check_positive(mode.R, "R");
  qcfg_.validate();
  const Real span = std::max(mode.R, qcfg_.truncation);
  const auto n = static_cast<std::size_t>(std::ceil(span / anchor_step_));
  w1_anchor_.assign(n + 1, 0);
  w2_anchor_.assign(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const Real a = anchor_step_ * k;
    const Real b = anchor_step_ * (k + 1);
    const auto [d1, d2] = legendre([&](Real u) { return comp_.v(u); }, a, b);
    w1_anchor_[k + 1] = w1_anchor_[k] + d1;
    w2_anchor_[k + 1] = w2_anchor_[k] + d2;
  }
  C1_ = rescaled_c1();
  t_switch_ = std::numeric_limits<Real>::infinity();
  if (comp_.growth() > 0) {
    // Rounding in the closed form is amplified by about e^{(phi-1) t}.
    t_switch_ = std::max<Real>(std::log(100.0L) / comp_.growth(), 6);
    if (mode.R > t_switch_) build_far_form();
  }
}

void ClosedFormSolution::build_far_form() {
  const Real R = mode_.R;
  // int_0^t G e^{-u} grows at most like e^{(phi-2) t}, well inside the range
  // of Real; only the homogeneous term is rescaled.
  auto both = [&](Real u) { return std::pair<Real, Real>{comp_.g1(-u, 1), comp_.g2(-u, 1)}; };
  const auto n = static_cast<std::size_t>(std::ceil(R / anchor_step_));
  // D e^{-u} decays at least like e^{-3u/2}; 40 more units leave < 1e-26.
  const std::size_t n_far = n + static_cast<std::size_t>(std::ceil(40 / anchor_step_));
  ig_anchor_.assign(n + 1, 0);
  id_anchor_.assign(n_far + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    ig_anchor_[k + 1] = ig_anchor_[k] + legendre(both, anchor_step_ * k, anchor_step_ * (k + 1)).first;
  }
  for (std::size_t k = n_far; k-- > 0;) {
    id_anchor_[k] = id_anchor_[k + 1] + legendre(both, anchor_step_ * k, anchor_step_ * (k + 1)).second;
  }
  id_anchor_.resize(n + 1);

  alpha_ = gamma_ = 0;
  const Real beta = mode_.beta, m = 1 - comp_.phi();
  const Point p0 = far_state(0), pR = far_state(R);
  const Real d0 = comp_.g2(0), dR = comp_.g2(-R);
  const Real g0 = comp_.g1(0) * std::exp(m * R), gR = comp_.g1(-R, -m);
  const Real det = d0 * gR - dR * g0;
  if (!std::isfinite(det) || std::fabs(det) < 1e-30L) {
    throw Error(ErrorCode::BoundaryDegeneracy, "decaying/growing boundary system is singular");
  }
  const Real r0 = beta / 2 - p0.S, rR = beta - 1 - pR.S;
  alpha_ = (r0 * gR - rR * g0) / det;
  gamma_ = (d0 * rR - dR * r0) / det;
}

ClosedFormSolution::Point ClosedFormSolution::far_state(Real t) const {
  const Real R = mode_.R, m = 1 - comp_.phi();
  const Real G = comp_.g1(-t), dG = -comp_.g1_prime(-t);
  const Real D = comp_.g2(-t), dD = -comp_.g2_prime(-t);
  // G e^{m R}, the growing solution normalized near t = R.
  const Real Gs = comp_.g1(-t, -m) * std::exp(-m * (t - R));
  const Real dGs = -comp_.g1_prime(-t, -m) * std::exp(-m * (t - R));
  auto both = [&](Real u) { return std::pair<Real, Real>{comp_.g1(-u, 1), comp_.g2(-u, 1)}; };
  auto k = static_cast<std::size_t>(std::floor(t / anchor_step_));
  if (k + 1 >= ig_anchor_.size()) k = ig_anchor_.size() - 2;
  const Real a = anchor_step_ * k, b = anchor_step_ * (k + 1);
  Real ig = ig_anchor_[k], id = id_anchor_[k + 1];
  if (t > a) ig += legendre(both, a, t).first;
  if (t < b) id += legendre(both, t, b).second;
  const Real k0 = -mode_.c * mode_.beta / (2 * comp_.growth() + 1);
  Point p;
  p.S = k0 * (D * ig + G * id) + alpha_ * D + gamma_ * Gs;
  p.dS = k0 * (dD * ig + dG * id) + alpha_ * dD + gamma_ * dGs;
  return p;
}

std::pair<Real, Real> ClosedFormSolution::w(Real t) const {
  if (!(t >= 0)) throw Error(ErrorCode::InvalidArgument, "w(t) needs t >= 0");
  const std::size_t last = w1_anchor_.size() - 1;
  auto k = static_cast<std::size_t>(std::floor(t / anchor_step_));
  if (k > last) throw Error(ErrorCode::InvalidArgument, "w(t) beyond the precomputed range");
  if (k == last) --k;
  const Real a = anchor_step_ * k;
  if (t == a) return {w1_anchor_[k], w2_anchor_[k]};
  const auto [d1, d2] = legendre([&](Real u) { return comp_.v(u); }, a, t);
  return {w1_anchor_[k] + d1, w2_anchor_[k] + d2};
}

Real ClosedFormSolution::rescaled_c1() const {
  // Every component grows like e^{(phi-1) t}; strip that factor at t = R.
  const Real R = mode_.R, beta = mode_.beta, c = mode_.c;
  const Real s = -comp_.growth();
  const auto [w1, w2] = w(R);
  const Real num = (beta - 1) * std::exp(s * R) - beta * comp_.g0(R, s) +
                   c * beta * (comp_.g1(R, s) * w1 + comp_.g2(R, s) * w2);
  const Real den = comp_.f(R, s);
  if (!std::isfinite(den) || std::fabs(den) < 1e-30L) {
    throw Error(ErrorCode::BoundaryDegeneracy, "f(R) vanishes after rescaling");
  }
  return num / den;
}

Real ClosedFormSolution::value(Real t) const {
  if (t > t_switch_ && t <= mode_.R) return far_state(t).S;
  const Real beta = mode_.beta, c = mode_.c;
  const auto [w1, w2] = w(t);
  return C1_ * comp_.f(t) + beta * comp_.g0(t) - c * beta * (comp_.g1(t) * w1 + comp_.g2(t) * w2);
}

ClosedFormSolution::Point ClosedFormSolution::state(Real t, Real w1, Real w2) const {
  const Real beta = mode_.beta, c = mode_.c;
  const Real k = comp_.g1_zero() / comp_.g2_zero();
  const Real g1 = comp_.g1(t), g2 = comp_.g2(t);
  const Real d1 = comp_.g1_prime(t), d2 = comp_.g2_prime(t);
  const Real g0 = g2 / (2 * comp_.g2_zero()), d0 = d2 / (2 * comp_.g2_zero());
  Point p;
  p.S = C1_ * (g1 - k * g2) + beta * g0 - c * beta * (g1 * w1 + g2 * w2);
  p.dS = C1_ * (d1 - k * d2) + beta * d0 - c * beta * (d1 * w1 + d2 * w2);
  return p;
}

std::vector<ClosedFormSolution::Point> ClosedFormSolution::sample(std::size_t n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample needs n >= 1");
  std::vector<Point> out(n + 1);
  const Real h = mode_.R / static_cast<Real>(n);
  auto node = [&](std::size_t i) { return i == n ? mode_.R : h * static_cast<Real>(i); };
  constexpr std::size_t kChunks = 16;
  auto run = [&](std::size_t lo, std::size_t hi) {
    auto [w1, w2] = w(node(lo));
    for (std::size_t i = lo; i < hi; ++i) {
      if (i > lo && h > 0.05L) {
        std::tie(w1, w2) = w(node(i));
      } else if (i > lo) {
        const auto [d1, d2] = short_legendre([&](Real u) { return comp_.v(u); }, node(i - 1), node(i));
        w1 += d1;
        w2 += d2;
      }
      out[i] = node(i) > t_switch_ ? far_state(node(i)) : state(node(i), w1, w2);
    }
  };
  std::vector<std::future<void>> jobs;
  const std::size_t total = n + 1;
  for (std::size_t k = 0; k < kChunks; ++k) {
    const std::size_t lo = total * k / kChunks, hi = total * (k + 1) / kChunks;
    if (lo < hi) jobs.push_back(std::async(std::launch::async, run, lo, hi));
  }
  for (auto& j : jobs) j.get();
  return out;
}

Real ClosedFormSolution::derivative(Real t) const {
  if (t > t_switch_ && t <= mode_.R) return far_state(t).dS;
  // The terms g1 v1 + g2 v2 from differentiating w cancel identically.
  const Real beta = mode_.beta, c = mode_.c;
  const auto [w1, w2] = w(t);
  return C1_ * comp_.f_prime(t) + beta * comp_.g0_prime(t) -
         c * beta * (comp_.g1_prime(t) * w1 + comp_.g2_prime(t) * w2);
}

QuadResult ClosedFormSolution::exp_weighted_integral() const {
  const Real beta = mode_.beta, c = mode_.c;
  auto h = [&](Real t) {
    if (t > t_switch_) return std::exp(-t) * far_state(t).S;
    const auto [w1, w2] = w(t);
    return C1_ * comp_.f(t, -1) + beta * comp_.g0(t, -1) -
           c * beta * (comp_.g1(t, -1) * w1 + comp_.g2(t, -1) * w2);
  };
  return integrate(h, 0, mode_.R, qcfg_);
}

ClosedFormSolution::InfiniteParts ClosedFormSolution::infinite_parts() const {
  if (!(comp_.phi() < 2)) {
    throw Error(ErrorCode::InvalidArgument, "infinite parts diverge unless phi < 2");
  }
  const Real U = qcfg_.truncation;
  InfiniteParts p;
  p.f = integrate([&](Real t) { return comp_.f(t, -1); }, 0, U, qcfg_).value;
  p.g0 = integrate([&](Real t) { return comp_.g0(t, -1); }, 0, U, qcfg_).value;
  p.g1w1 = integrate([&](Real t) { return comp_.g1(t, -1) * w(t).first; }, 0, U, qcfg_).value;
  p.g2w2 = integrate([&](Real t) { return comp_.g2(t, -1) * w(t).second; }, 0, U, qcfg_).value;
  // Each integrand behaves like a multiple of e^{(phi - 2) t} beyond U.
  const Real rate = 2 - comp_.phi();
  const auto [w1, w2] = w(U);
  const Real amp = std::fabs(comp_.f(U, -1)) + std::fabs(comp_.g0(U, -1)) +
                   std::fabs(comp_.g1(U, -1) * w1) + std::fabs(comp_.g2(U, -1) * w2);
  p.tail = amp / rate;
  return p;
}

Real ClosedFormSolution::exp_weighted_integral_affine(const InfiniteParts& parts) const {
  const Real beta = mode_.beta, c = mode_.c;
  return C1_ * parts.f + beta * parts.g0 - c * beta * (parts.g1w1 + parts.g2w2);
}

// ------------------------------------------------------------ one-shot forms

ComponentValues components_at(Real t, const ModeParams& mode) {
  return Components(mode.c).at(t);
}

std::pair<Real, Real> v_integrands(Real u, const ModeParams& mode) {
  return Components(mode.c).v(u);
}

std::pair<Real, Real> w_integrals(Real t, const ModeParams& mode, const QuadConfig& cfg) {
  ModeParams m = mode;
  m.R = std::max(m.R, t);
  return ClosedFormSolution(m, cfg).w(t);
}

Real c1_constant(const ModeParams& mode, const QuadConfig& cfg) {
  return ClosedFormSolution(mode, cfg).C1();
}

Real s_value(Real t, const ModeParams& mode, const QuadConfig& cfg) {
  if (!(t >= 0 && t <= mode.R)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, R]");
  return ClosedFormSolution(mode, cfg).value(t);
}

Real s_prime_zero(const ModeParams& mode, const QuadConfig& cfg) {
  return ClosedFormSolution(mode, cfg).s_prime_zero();
}

Real exp_weighted_integral(const ModeParams& mode, const QuadConfig& cfg) {
  return ClosedFormSolution(mode, cfg).exp_weighted_integral().value;
}

}  // namespace mollab
