#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <functional>

#include "mollab/error.hpp"

namespace mollab {

struct QuadConfig {
  Real abs_tol = 1e-11L;
  Real rel_tol = 1e-11L;
  /// Maximum number of bisections applied to any panel.
  int max_depth = 50;
  int initial_panels = 4;
  /// Upper limit standing in for infinity in integrals over [0, inf).
  Real truncation = 60;

  void validate() const;
};

struct QuadResult {
  Real value = 0;
  Real error_estimate = 0;
  long panels_used = 0;
};

/// Thrown when the tolerance cannot be met within max_depth; carries the
/// best available result with its (inflated) error estimate.
class QuadDepthError : public Error {
 public:
  QuadDepthError(const std::string& what, QuadResult best)
      : Error(ErrorCode::DepthExceeded, what), best_(best) {}
  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

using Integrand = std::function<Real(Real)>;

QuadResult integrate(const Integrand& f, Real lo, Real hi, const QuadConfig& cfg = {});

/// Bound on the tail integral beyond U of a function with
/// |f(u)| <= amplitude * exp(-decay_rate * u).
Real tail_bound(Real decay_rate, Real amplitude, Real U);


}  // namespace mollab
