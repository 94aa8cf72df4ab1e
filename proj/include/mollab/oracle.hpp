#pragma once

// Brute-force references for the closed form: a finite-difference solve of
// the Euler-Lagrange equation and a direct minimization of the discretized
// functional. Both work on uniform grids with n intervals.

#include <functional>
#include <utility>

#include "mollab/profile.hpp"
#include "mollab/varsol.hpp"

namespace mollab {

/// Central differences for S'' + tanh(t) S' + c S = c beta / (1 + e^{2t}),
/// S(0) = beta/2, S(R) = beta - 1; tridiagonal solve. Throws SingularSystem.
SolutionProfile bvp_solve(const ModeParams& mode, std::size_t n);

/// Trapezoid discretization of K(S) (derivatives on cell midpoints); its
/// stationarity system is tridiagonal. Throws IndefiniteForm unless the
/// caller passes allow_non_convex for a mode with c0 < 0.
SolutionProfile discrete_minimize(const ModeParams& mode, std::size_t n,
                                  bool allow_non_convex = false);

/// The discretized functional minimized by discrete_minimize.
Real discrete_functional(const SolutionProfile& profile, const ModeParams& mode);

/// The closed form sampled on the uniform grid with n intervals.
SolutionProfile sample_closed_form(const ClosedFormSolution& sol, std::size_t n);

struct ProfileDiff {
  double sup_err = 0;
  double l2_err = 0;  // sqrt of the trapezoid-free Riemann sum of squares
};

/// Sup and L2 distances of two profiles on the same grid. Throws GridMismatch.
ProfileDiff compare_profiles(const SolutionProfile& a, const SolutionProfile& b);

/// The full-interval functional int_{-R}^{R} e^t (c0 S^2 + c1 S'^2) dt of the
/// extension S(-t) = beta - S(t), by the trapezoid rule on the mirrored grid.
Real full_interval_functional(const SolutionProfile& profile, const ModeParams& mode);

/// Max interior residual of the discrete Euler-Lagrange stencil.
double stencil_residual(const SolutionProfile& profile, const ModeParams& mode);

/// K(S + eps h) - K(S) for the closed-form S and perturbations h with
/// h(0) = h(R) = 0. S and S' are cached on a composite Gauss-Legendre rule, so
/// many perturbations can be probed cheaply.
class VariationProbe {
 public:
  /// h(t) -> (h(t), h'(t)).
  using Perturbation = std::function<std::pair<Real, Real>(Real)>;

  explicit VariationProbe(const ClosedFormSolution& sol, std::size_t panels = 200);

  Real delta_k(const Perturbation& h, Real eps) const;

 private:
  ModeParams mode_;
  std::vector<Real> t_, wt_, s_, ds_;
};

}  // namespace mollab
