#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weissbench {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  ToleranceNotMet,
  TruncationOverflow,
  DivergentSum,
  BoundViolated,
  ConfigInvalid,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure in the library surfaces as this exception; the code is what
// callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::ToleranceNotMet: return "TOLERANCE_NOT_MET";
    case ErrorCode::TruncationOverflow: return "TRUNCATION_OVERFLOW";
    case ErrorCode::DivergentSum: return "DIVERGENT_SUM";
    case ErrorCode::BoundViolated: return "BOUND_VIOLATED";
    case ErrorCode::ConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace weissbench
