#pragma once

#include <stdexcept>
#include <string>

namespace pc {

enum class ErrorCode {
  InvalidArgument,
  NonPrime,
  ZeroDenominator,
  PrimeMismatch,
  DivisionByZeroToPrecision,
  OddValuation,
  NotASquare,
  InsufficientPrecision,
  AllZeroToPrecision,
  UncertifiableHull,
  MinimumNotAttained,
  NUndefined,
  PrecisionExhausted,
  MaxDepthExceeded,
  CommonRoot,
  DiscriminantZero,
  DepthGuardExceeded,
  LandsOnNonSmooth,
  BadReduction,
  InsufficientTruncation,
  HypothesisFailed,
};

const char* to_string(ErrorCode code) noexcept;

// Certification failures: a computation could not certify its result within
// its guards, or produced a result contradicting a guaranteed property.
// Everything else is a violated precondition.
bool is_certification_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace pc
