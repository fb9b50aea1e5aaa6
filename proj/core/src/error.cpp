#include "edd/error.hpp"

namespace edd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::DuplicateSection: return "DUPLICATE_SECTION";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::NonPositiveLength: return "NON_POSITIVE_LENGTH";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::MissingSection: return "MISSING_SECTION";
    case ErrorCode::AssignmentCapExceeded: return "ASSIGNMENT_CAP_EXCEEDED";
    case ErrorCode::NotConsecutive: return "NOT_CONSECUTIVE";
    case ErrorCode::CoincidentCut: return "COINCIDENT_CUT";
    case ErrorCode::SumMismatch: return "SUM_MISMATCH";
    case ErrorCode::OracleCapExceeded: return "ORACLE_CAP_EXCEEDED";
    case ErrorCode::InfeasibleParams: return "INFEASIBLE_PARAMS";
    case ErrorCode::MalformedSolution: return "MALFORMED_SOLUTION";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace edd
