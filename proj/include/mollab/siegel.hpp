#pragma once

// Q_R(y) on [0, 1] recovered from S_R and its step-function limit.

#include <map>
#include <string>
#include <vector>

#include "mollab/varsol.hpp"

namespace mollab {

/// Q_inf(y): 1 for y < 1/2, 1/2 at y = 1/2, 0 for y > 1/2.
Real step_function(Real y);

/// Q_R(y) = S_R(2R(y - 1/2)) for y >= 1/2 and beta - S_R(2R(1/2 - y)) below.
Real q_value(const ClosedFormSolution& sol, Real y);

/// Special mode with the given R (theta = sqrt(3/5) / R).
Real q_value(Real R, Real y, const QuadConfig& cfg = {});

/// Q_R(y0) for each R of an increasing list (special mode).
std::vector<Real> step_limit_scan(Real y0, const std::vector<Real>& R_list,
                                  const QuadConfig& cfg = {});

/// Closed forms of the leading large-t coefficients of F+ and F-, next to
/// the values read off the functions at t = 30:
///   gamma_ratio    Gamma(1 + sqrt5/2) Gamma(sqrt5/2) / Gamma(phi)^2
///   csc            csc(sqrt5 pi / 2)
///   Fp_measured    F+(30) e^{30}
///   Fm_measured    F-(30) e^{-(sqrt5 - 1) 30}
///   v1_measured, v2_measured   v_i(30) e^{(3 - sqrt5) 30 / 2}
std::map<std::string, Real> asymptotic_constants();

/// max over t in [0, R] (sampled on n intervals) of |S_R(t)| e^{-(phi-1) t}.
Real growth_envelope(const ClosedFormSolution& sol, std::size_t n = 400);

}  // namespace mollab
