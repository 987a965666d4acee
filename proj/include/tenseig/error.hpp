#pragma once

#include <stdexcept>
#include <string>

namespace tenseig {

enum class ErrorCode {
  dimension_mismatch,
  invalid_argument,
  not_a_gradient,
  not_an_eigenline,
  zero_polynomial,
  degenerate_stationary_point,
  leading_form_vanishes,
  critical_target,
  not_harmonic,
  not_cubic_r3,
  minimum_degenerate,
  residual_too_large,
  precondition_violated,
  parse_error,
  non_convergence,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_a_gradient: return "NotAGradient";
    case ErrorCode::not_an_eigenline: return "NotAnEigenline";
    case ErrorCode::zero_polynomial: return "ZeroPolynomial";
    case ErrorCode::degenerate_stationary_point: return "DegenerateStationaryPoint";
    case ErrorCode::leading_form_vanishes: return "LeadingFormVanishes";
    case ErrorCode::critical_target: return "CriticalTarget";
    case ErrorCode::not_harmonic: return "NotHarmonic";
    case ErrorCode::not_cubic_r3: return "NotCubicR3";
    case ErrorCode::minimum_degenerate: return "MinimumDegenerate";
    case ErrorCode::residual_too_large: return "ResidualTooLarge";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::non_convergence: return "NonConvergence";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace tenseig
