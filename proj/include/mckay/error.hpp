#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mckay {

enum class ErrorCode {
  DivisionByZero,
  NotDivisible,
  Singular,
  ShapeMismatch,
  OrderExceeded,
  NotAbelian,
  NotIrreducible,
  Duplicate,
  Incomplete,
  NotTrivialFirst,
  NotSplit,
  GroupMismatch,
  OutOfRange,
  NonIntegerMultiplicity,
  NotClosed,
  QuiverMismatch,
  BadPotentialDegree,
  BadPotentialLength,
  ResourceLimit,
  NotFinite,
  NotValidated,
  DegeneratePairing,
  OddMiddleDimension,
  NotScalar,
  NotSL,
  VertexNotFound,
  ParseError,
  ValidationError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mckay
