#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magneto {

enum class ErrorCode {
  kDuplicateEdge,
  kSelfLoop,
  kVertexOutOfRange,
  kNonpositiveWeight,
  kNonpositiveMeasure,
  kMixedGroups,
  kWrongGroup,
  kIncompleteAssignment,
  kNotACycle,
  kBudgetExceeded,
  kContinuousGroup,
  kBadDelta,
  kBadT,
  kBadAlpha,
  kBadExponents,
  kZeroConstant,
  kZeroFunction,
  kNotNormalized,
  kTooManyVertices,
  kNotHermitian,
  kPairingFailure,
  kNegativeTime,
  kSingularSolve,
  kDimensionMismatch,
  kParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library surfaces as this exception; `code()` is stable
/// and is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace magneto
