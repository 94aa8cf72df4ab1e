#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mollab {

/// Scalar type of the closed-form pipeline (80-bit extended on x86-64).
using Real = long double;

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  InvalidC,
  DegenerateParameters,
  Pole,
  DepthExceeded,
  WronskianVanished,
  BoundaryDegeneracy,
  NonPositiveArgument,
  GridTooCoarse,
  InvalidProfile,
  SingularSystem,
  IndefiniteForm,
  GridMismatch,
  InvalidR,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every numeric failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mollab
