#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lauricella {

/// Failure categories shared by every module.
///
/// Codes up to `PreconditionViolation` describe bad input (the CLI maps them
/// to exit status 1); the remaining codes are numerical failures (exit 2).
enum class ErrorCode {
  ParameterPole,
  OutsideDomain,
  PreconditionViolation,
  CoincidentPoints,
  StencilOutOfDomain,
  UncertifiedDatum,
  NonConvergence,
  QuadratureNotConverged,
  BudgetExhausted,
  GridTooCoarse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes caused by invalid input rather than numerical trouble.
constexpr bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParameterPole:
    case ErrorCode::OutsideDomain:
    case ErrorCode::PreconditionViolation:
    case ErrorCode::CoincidentPoints:
    case ErrorCode::StencilOutOfDomain:
    case ErrorCode::UncertifiedDatum:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Throws `Error(code, message)` unless `condition` holds.
inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace lauricella
