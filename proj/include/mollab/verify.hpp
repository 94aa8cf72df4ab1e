#pragma once

// Invariant suites run by `mollab verify`.

#include <string>
#include <vector>

#include "mollab/quad.hpp"

namespace mollab {

enum class VerifyLevel { Quick, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  /// Relative perturbation of c1 in the coefficients the residual checks
  /// assume (fault injection; 0 for a genuine run).
  Real tamper_c1 = 0;
  QuadConfig quad{};
};

struct CheckResult {
  std::string name;
  double measured = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double wall_time_s = 0;

  bool all_pass() const;
  std::string text() const;
  std::string json() const;
};

VerifyReport run_verify(const VerifyOptions& opts);

/// Published kappa table: (theta, printed value, unit of the last digit).
struct TableEntry {
  Real theta;
  Real kappa;
  Real unit;
};
const std::vector<TableEntry>& published_kappa_table();

}  // namespace mollab
