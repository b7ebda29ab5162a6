#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace timemap {

enum class ErrorCode {
  InvalidArgument,
  SubdivisionExhausted,
  NoSignChange,
  MaxIterations,
  BracketExhausted,
  LambdaOutOfRange,
  TOutOfRange,
  XOutOfRange,
  StepTooLarge,
  InvalidInterval,
  NoConvergence,
  DimensionTooLow,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::SubdivisionExhausted: return "SUBDIVISION_EXHAUSTED";
    case ErrorCode::NoSignChange: return "NO_SIGN_CHANGE";
    case ErrorCode::MaxIterations: return "MAX_ITERATIONS";
    case ErrorCode::BracketExhausted: return "BRACKET_EXHAUSTED";
    case ErrorCode::LambdaOutOfRange: return "LAMBDA_OUT_OF_RANGE";
    case ErrorCode::TOutOfRange: return "T_OUT_OF_RANGE";
    case ErrorCode::XOutOfRange: return "X_OUT_OF_RANGE";
    case ErrorCode::StepTooLarge: return "STEP_TOO_LARGE";
    case ErrorCode::InvalidInterval: return "INVALID_INTERVAL";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::DimensionTooLow: return "DIMENSION_TOO_LOW";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace timemap
