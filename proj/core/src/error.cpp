#include "magneto/error.hpp"

namespace magneto {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DUPLICATE_EDGE";
    case ErrorCode::kSelfLoop: return "SELF_LOOP";
    case ErrorCode::kVertexOutOfRange: return "VERTEX_OUT_OF_RANGE";
    case ErrorCode::kNonpositiveWeight: return "NONPOSITIVE_WEIGHT";
    case ErrorCode::kNonpositiveMeasure: return "NONPOSITIVE_MEASURE";
    case ErrorCode::kMixedGroups: return "MIXED_GROUPS";
    case ErrorCode::kWrongGroup: return "WRONG_GROUP";
    case ErrorCode::kIncompleteAssignment: return "INCOMPLETE_ASSIGNMENT";
    case ErrorCode::kNotACycle: return "NOT_A_CYCLE";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kContinuousGroup: return "CONTINUOUS_GROUP";
    case ErrorCode::kBadDelta: return "BAD_DELTA";
    case ErrorCode::kBadT: return "BAD_T";
    case ErrorCode::kBadAlpha: return "BAD_ALPHA";
    case ErrorCode::kBadExponents: return "BAD_EXPONENTS";
    case ErrorCode::kZeroConstant: return "ZERO_CONSTANT";
    case ErrorCode::kZeroFunction: return "ZERO_FUNCTION";
    case ErrorCode::kNotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::kTooManyVertices: return "TOO_MANY_VERTICES";
    case ErrorCode::kNotHermitian: return "NOT_HERMITIAN";
    case ErrorCode::kPairingFailure: return "PAIRING_FAILURE";
    case ErrorCode::kNegativeTime: return "NEGATIVE_TIME";
    case ErrorCode::kSingularSolve: return "SINGULAR_SOLVE";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace magneto
