#pragma once

// Gauss hypergeometric function 2F1(a, b; c; z) for real parameters and real
// z < 1, with emphasis on the large negative arguments z = -exp(2t).

#include "mollab/error.hpp"

namespace mollab {

// ---------------------------------------------------------------- gamma ---

/// Gamma function for real s. Throws ErrorCode::Pole at s = 0, -1, -2, ...
Real gamma_real(Real s);

/// log |Gamma(s)|. Throws ErrorCode::Pole at the non-positive integers.
Real log_gamma(Real s);

/// log |Gamma(s)| together with the sign of Gamma(s).
struct SignedLog {
  Real log_abs = 0;
  int sign = 1;  // 0 encodes a vanishing value (used for 1/Gamma at a pole)
};

SignedLog log_gamma_signed(Real s);

/// log |1/Gamma(s)| with sign; sign is 0 at the poles of Gamma.
SignedLog log_rgamma_signed(Real s);

/// sin(pi x) with exact argument reduction.
Real sin_pi(Real x);

// -------------------------------------------------------------- 2F1 -------

struct HypArgs {
  Real a = 0;
  Real b = 0;
  Real c = 1;
  Real z = 0;
};

struct EvalConfig {
  /// Series stop once three consecutive terms are below rel_tol * |sum|.
  Real rel_tol = 1e-19L;
  long max_terms = 200000;
  /// Largest series argument accepted from the Pfaff transformation for z < -1/2.
  /// Past it the connection formula around infinity takes over. The default
  /// 1/golden ratio balances the two arguments.
  Real crossover_z = 0.6180339887498948482045868343656381L;

  void validate() const;
};

/// Direct power series, |z| < 1.
Real hyp2f1_series(const HypArgs& args, const EvalConfig& cfg = {});

/// Pfaff transformation (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), z < 0.
Real hyp2f1_pfaff(const HypArgs& args, const EvalConfig& cfg = {});

/// 2F1(a, b; c; -exp(2t)) for t >= 0 through the connection formula around
/// z = infinity. Both inner series run in -exp(-2t); when exp(-2t) > 1/2 the
/// inner functions are themselves Pfaff-transformed into [1/3, 1/2].
Real hyp2f1_neg(Real a, Real b, Real c, Real t, const EvalConfig& cfg = {});

/// Routed evaluation for real z < 1 (series, Pfaff or connection formula).
Real hyp2f1(const HypArgs& args, const EvalConfig& cfg = {});

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
Real hyp2f1_deriv(const HypArgs& args, const EvalConfig& cfg = {});

/// Prepared evaluator for u(t) = exp(shift t) 2F1(a, b; c; -exp(2t)) at fixed
/// parameters. The Gamma prefactors of the connection formula are computed
/// once and the exponentials are merged before exponentiation.
class NegExpHyp2F1 {
 public:
  NegExpHyp2F1() = default;
  NegExpHyp2F1(Real a, Real b, Real c, const EvalConfig& cfg = {});

  /// exp(shift t) 2F1(a, b; c; -exp(2t)); any real t.
  Real value(Real t, Real shift = 0) const;

  /// d/dt of value(t, shift).
  Real derivative(Real t, Real shift = 0) const;

  /// Coefficients A, B with 2F1 ~ A exp(-2at) + B exp(-2bt) as t -> infinity.
  Real leading_coefficient_a() const;
  Real leading_coefficient_b() const;

  struct Plan {
    Real a = 0, b = 0, c = 1;
    bool connection_ok = false;
    SignedLog pref_a{}, pref_b{};
  };

 private:
  Plan base_{};
  Plan shifted_{};  // (a+1, b+1, c+1), for the derivative
  EvalConfig cfg_{};
};

/// Threshold t* above which -exp(2t) is handled by the connection formula,
/// i.e. the Pfaff argument exp(2t) / (1 + exp(2t)) exceeds cfg.crossover_z.
Real pfaff_connection_crossover(const EvalConfig& cfg = {});

}  // namespace mollab
