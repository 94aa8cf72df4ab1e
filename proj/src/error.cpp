#include "mollab/error.hpp"

namespace mollab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidC: return "InvalidC";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::Pole: return "Pole";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::WronskianVanished: return "WronskianVanished";
    case ErrorCode::BoundaryDegeneracy: return "BoundaryDegeneracy";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::IndefiniteForm: return "IndefiniteForm";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidR: return "InvalidR";
  }
  return "Unknown";
}

}  // namespace mollab
