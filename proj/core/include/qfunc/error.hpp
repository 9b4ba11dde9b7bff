#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfunc {

enum class ErrorCode {
  DegenerateQ,
  OutOfRange,
  DimensionMismatch,
  DuplicateVariable,
  UnknownVariable,
  VariableCollision,
  ContextMismatch,
  DegreeOverflow,
  NotDivisible,
  OutsideExactRegion,
  ExactnessExhausted,
  DivisionByZero,
  InvalidBoundary,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the kernel. The code identifies the violated
/// precondition; what() carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qfunc
