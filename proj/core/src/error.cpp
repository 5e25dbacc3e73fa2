#include "pms/error.hpp"

namespace pms {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeBreakpoint: return "NegativeBreakpoint";
    case ErrorCode::NonMonotoneValue: return "NonMonotoneValue";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ProbeOutOfRange: return "ProbeOutOfRange";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ArgOutOfRange: return "ArgOutOfRange";
    case ErrorCode::InvalidTNorm: return "InvalidTNorm";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::NotAMetric: return "NotAMetric";
    case ErrorCode::StarNotAdditiveOnHeaviside: return "StarNotAdditiveOnHeaviside";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::NotLipschitz: return "NotLipschitz";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InsufficientSequence: return "InsufficientSequence";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace pms
