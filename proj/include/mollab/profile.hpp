#pragma once

#include <cstddef>
#include <vector>

namespace mollab {

/// A sampled admissible function S on [0, R]: grid t_0 = 0 < ... < t_n = R.
struct SolutionProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivs;  // may be empty until filled

  std::size_t size() const { return grid.size(); }
};

/// Uniform grid with n intervals on [0, R].
std::vector<double> uniform_grid(double R, std::size_t n);

/// Second-order finite-difference derivative (one-sided at the ends).
std::vector<double> difference_derivative(const std::vector<double>& grid,
                                          const std::vector<double>& values);

}  // namespace mollab
