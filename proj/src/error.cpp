#include "pc/error.hpp"

namespace pc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::DivisionByZeroToPrecision: return "DivisionByZeroToPrecision";
    case ErrorCode::OddValuation: return "OddValuation";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::AllZeroToPrecision: return "AllZeroToPrecision";
    case ErrorCode::UncertifiableHull: return "UncertifiableHull";
    case ErrorCode::MinimumNotAttained: return "MinimumNotAttained";
    case ErrorCode::NUndefined: return "NUndefined";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorCode::CommonRoot: return "CommonRoot";
    case ErrorCode::DiscriminantZero: return "DiscriminantZero";
    case ErrorCode::DepthGuardExceeded: return "DepthGuardExceeded";
    case ErrorCode::LandsOnNonSmooth: return "LandsOnNonSmooth";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
  }
  return "Unknown";
}

bool is_certification_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LandsOnNonSmooth:
    case ErrorCode::MaxDepthExceeded:
    case ErrorCode::DepthGuardExceeded:
    case ErrorCode::PrecisionExhausted:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace pc
