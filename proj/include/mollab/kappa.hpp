#pragma once

// Moment constant c(P, Q, R) and the critical-zero proportion
// kappa = 1 - log c / R for the closed-form Q.

#include <string>

#include "mollab/profile.hpp"
#include "mollab/varsol.hpp"

namespace mollab {

enum class MollifierKind { Linear, Sinh, Custom };

/// The P-side of the functional through its moments B = int P^2, C = int P'^2.
struct MollifierSpec {
  MollifierKind kind = MollifierKind::Linear;
  Real r = 0;  // sinh kind: P(x) = sinh(r x) / sinh(r)
  Real B = 1.0L / 3;
  Real C = 1;

  static MollifierSpec linear();
  static MollifierSpec sinh(Real r);
  static MollifierSpec custom(Real B, Real C);

  /// "linear", "sinh:<r>" or "custom:<B>:<C>".
  std::string tag() const;
};

/// (B, C) for the spec; closed forms for the sinh family. Throws InvalidR.
std::pair<Real, Real> mollifier_moments(const MollifierSpec& spec);

/// How int_0^R e^{-t} S dt enters the constant.
///  Exact: adaptive quadrature of the closed-form S on [0, R].
///  Asymptotic: the affine large-R form C1(R) I_f + I_g0 + I_g1w1 + I_g2w2
///  built from the integrals over [0, infinity) (special mode only).
enum class KappaRoute { Exact, Asymptotic };

std::string_view to_string(KappaRoute route);

struct KappaResult {
  Real theta = 0;
  Real R = 0;
  Real beta = 1;
  Real c_pqr = 0;
  Real log_c = 0;  // log c_pqr, computed without forming e^R
  Real kappa = 0;
  ModeKind mode_tag = ModeKind::Special;
  KappaRoute route = KappaRoute::Exact;
  bool non_convex = false;
  std::string mollifier = "linear";
};

/// c(P, Q, R) for the special mode; see KappaRoute.
Real c_pqr_special(Real theta, KappaRoute route = KappaRoute::Exact, const QuadConfig& cfg = {});

KappaResult kappa_special(Real theta, KappaRoute route = KappaRoute::Exact,
                          const QuadConfig& cfg = {});

KappaResult kappa_general(Real theta, Real R, Real beta, const MollifierSpec& spec,
                          const QuadConfig& cfg = {});

/// K(S) at the minimizer from boundary data:
///   c0 beta^2 (1 - e^-R) - c1 beta S'(0) + 2 (beta - 1) c1 S'(R) cosh R
///   - c0 beta int_0^R e^{-t} S dt.
Real k_closed_form(const ClosedFormSolution& sol, KappaRoute route = KappaRoute::Exact);

/// log c(P, Q, R) given K(S) of an admissible S:
///   c = (1 + e^{2R} (beta-1)^2) / 2 + (c1 / 4R) (e^{2R} (beta-1)^2 - 1) + (e^R / 2R) K.
/// Throws NonPositiveArgument if the argument of the logarithm is <= 0.
Real log_c_from_k(const ModeParams& mode, Real K);

KappaResult kappa_from_k(const ModeParams& mode, Real K);

struct KDirectConfig {
  /// Allowed relative gap between the grid estimate and its Richardson value.
  double rel_tol = 1e-6;
};

/// K(S) by the trapezoid rule on the profile grid, Richardson-extrapolated
/// against the every-other-node subgrid. Needs a uniform grid with an even
/// number of intervals and filled derivative values.
/// Throws InvalidProfile, GridTooCoarse.
Real k_functional_direct(const SolutionProfile& profile, const ModeParams& mode,
                         const KDirectConfig& cfg = {});

/// J(Q) = int_0^1 (C/theta w^2 + theta B w'^2) dy with w = e^{R y} Q(y), by
/// adaptive quadrature of the closed-form Q. Independent of the K reduction.
Real j_functional_direct(const ClosedFormSolution& sol, Real B, Real C);

/// c(P, Q, R) = (1 + e^{2R} (beta-1)^2) / 2 + J(Q).
Real c_pqr_from_j(const ClosedFormSolution& sol, Real B, Real C);

}  // namespace mollab
