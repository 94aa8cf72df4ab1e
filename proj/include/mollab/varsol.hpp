#pragma once

// Closed-form minimizer S_R(t; c, beta) of the half-interval functional
//   K(S) = int_0^R e^t (c0 S^2 + c1 S'^2) + e^-t (c0 (beta - S)^2 + c1 S'^2) dt
// with S(0) = beta/2, S(R) = beta - 1. Its Euler-Lagrange equation is
//   S'' + tanh(t) S' + c S = c beta / (1 + e^{2t}),  c = -c0/c1.

#include <utility>
#include <vector>

#include "mollab/hyp2f1.hpp"
#include "mollab/quad.hpp"

namespace mollab {

enum class ModeKind { Special, General, Ode };

struct ModeParams {
  Real R = 0;
  Real theta = 0;
  Real beta = 1;
  Real c = -1;
  Real c0 = 0;
  Real c1 = 0;
  Real phi_c = 0;
  ModeKind kind = ModeKind::Special;
  /// c0 < 0: the functional may fail to be convex; S is only stationary.
  bool non_convex = false;
};

/// c0 = c1 = 4/(5 theta), R = sqrt(3/5)/theta, beta = 1, c = -1.
ModeParams make_mode_special(Real theta);

/// c0 = C/theta - theta B R^2, c1 = 4 theta B R^2, c = -c0/c1.
ModeParams make_mode_general(Real theta, Real R, Real beta, Real B, Real C);

/// Bare ODE coefficient c on [0, R]; c1 is normalized to 1 (c0 = -c).
ModeParams make_mode_ode(Real R, Real c, Real beta);

/// (1 + sqrt(1 - 4c)) / 2.
Real phi_of(Real c);

struct ComponentValues {
  Real Fp = 0, Fm = 0, F1p = 0, F1m = 0;
  Real g1 = 0, g2 = 0, f = 0, g0 = 0;
  Real W = 0;
};

/// Fundamental system of the homogeneous equation for a fixed c:
///   g1 = e^{(c/phi) t} 2F1(1/2, c/phi; 1/2 + c/phi; -e^{2t})
///   g2 = e^{phi t}     2F1(1/2, phi;   1/2 + phi;   -e^{2t})
/// The optional shift multiplies every value by e^{shift t}, which keeps
/// large-t values of order one.
class Components {
 public:
  explicit Components(Real c, const EvalConfig& cfg = {});

  Real c() const { return c_; }
  Real phi() const { return phi_; }
  /// Growth rate of g1, g2 and f as t grows: phi - 1.
  Real growth() const { return phi_ - 1; }

  Real g1(Real t, Real shift = 0) const;
  Real g2(Real t, Real shift = 0) const;
  Real g1_prime(Real t, Real shift = 0) const;  // d/dt g1, times e^{shift t}
  Real g2_prime(Real t, Real shift = 0) const;
  Real f(Real t, Real shift = 0) const;
  Real f_prime(Real t, Real shift = 0) const;
  Real g0(Real t, Real shift = 0) const;
  Real g0_prime(Real t, Real shift = 0) const;

  Real g1_zero() const { return g1_0_; }
  Real g2_zero() const { return g2_0_; }

  /// g1 g2' - g1' g2 = sqrt(1 - 4c) / (2 cosh t).
  Real wronskian(Real t) const;
  /// e^t (2 phi F- F1+ - F+ F1-), straight from the hypergeometric values.
  Real wronskian_direct(Real t) const;

  /// v1 = g2 / (W (1 + e^{2u})), v2 = -g1 / (W (1 + e^{2u})).
  std::pair<Real, Real> v(Real u) const;

  ComponentValues at(Real t) const;

 private:
  Real c_ = -1, phi_ = 0, m_ = 0, root_ = 0;
  NegExpHyp2F1 Fp_, Fm_, F1p_, F1m_;
  Real g1_0_ = 0, g2_0_ = 0;
};

/// S_R(t; c, beta) = C1 f + beta g0 - c beta (g1 w1 + g2 w2),
/// w_i(t) = int_0^t v_i(u) du.
///
/// For c < 0 each term grows like e^{(phi-1) t} while S stays bounded, so far
/// from the origin value() and derivative() switch to the equivalent form
///   S = y_p + alpha D + gamma G,  D(t) = g2(-t),  G(t) = g1(-t) e^{m R},
///   y_p = -(c beta / sqrt(1-4c)) (D int_0^t G e^{-u} du + G int_t^inf D e^{-u} du),
/// built from the decaying and growing solutions (the equation is even in t).
class ClosedFormSolution {
 public:
  ClosedFormSolution(const ModeParams& mode, const QuadConfig& qcfg = {},
                     const EvalConfig& ecfg = {});

  const ModeParams& mode() const { return mode_; }
  const Components& components() const { return comp_; }
  const QuadConfig& quad_config() const { return qcfg_; }

  Real C1() const { return C1_; }

  /// Copy with C1 replaced; breaks S(R) = beta - 1 (fault injection).
  ClosedFormSolution with_c1(Real c1) const {
    ClosedFormSolution copy = *this;
    copy.C1_ = c1;
    return copy;
  }

  /// (w1(t), w2(t)) for t in [0, max(R, truncation)].
  std::pair<Real, Real> w(Real t) const;

  Real value(Real t) const;
  Real derivative(Real t) const;

  struct Point {
    Real S = 0, dS = 0;
  };
  /// S and S' at the n+1 nodes of the uniform grid on [0, R]. The w-integrals
  /// are accumulated node to node, so this is far cheaper than n calls of
  /// value(); work is split into a fixed number of chunks run in parallel.
  std::vector<Point> sample(std::size_t n) const;

  /// Beyond this t the decaying/growing form is used (infinite if never).
  Real switch_point() const { return t_switch_; }

  Real s_prime_zero() const { return derivative(0); }
  Real s_prime_R() const { return derivative(mode_.R); }

  /// int_0^R e^{-t} S(t) dt by adaptive quadrature.
  QuadResult exp_weighted_integral() const;

  /// The four integrals int_0^U e^{-t} h(t) dt, h in {f, g0, g1 w1, g2 w2},
  /// with U = quad_config().truncation; they exist when phi < 2.
  struct InfiniteParts {
    Real f = 0, g0 = 0, g1w1 = 0, g2w2 = 0;
    Real tail = 0;  // bound on the discarded tails beyond U
  };
  InfiniteParts infinite_parts() const;

  /// Large-R form of int_0^R e^{-t} S dt: affine in C1 through the
  /// infinite parts.
  Real exp_weighted_integral_affine(const InfiniteParts& parts) const;

 private:
  Real rescaled_c1() const;
  Point state(Real t, Real w1, Real w2) const;
  void build_far_form();
  Point far_state(Real t) const;

  ModeParams mode_;
  QuadConfig qcfg_;
  Components comp_;
  Real anchor_step_ = 0.25L;
  std::vector<Real> w1_anchor_, w2_anchor_;
  Real C1_ = 0;

  Real t_switch_ = 0;
  Real far_end_ = 0;  // upper limit standing in for infinity in int_t^inf D e^{-u}
  std::vector<Real> ig_anchor_;  // int_0^{kh} G e^{-u} du
  std::vector<Real> id_anchor_;  // int_{kh}^{far_end} D e^{-u} du
  Real alpha_ = 0, gamma_ = 0;
};

// One-shot forms; each builds a ClosedFormSolution.
ComponentValues components_at(Real t, const ModeParams& mode);
std::pair<Real, Real> v_integrands(Real u, const ModeParams& mode);
std::pair<Real, Real> w_integrals(Real t, const ModeParams& mode, const QuadConfig& cfg = {});
Real c1_constant(const ModeParams& mode, const QuadConfig& cfg = {});
Real s_value(Real t, const ModeParams& mode, const QuadConfig& cfg = {});
Real s_prime_zero(const ModeParams& mode, const QuadConfig& cfg = {});
Real exp_weighted_integral(const ModeParams& mode, const QuadConfig& cfg = {});

}  // namespace mollab
