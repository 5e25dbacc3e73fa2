#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pms {

enum class ErrorCode {
  NegativeBreakpoint,
  NonMonotoneValue,
  ValueOutOfRange,
  NonFiniteInput,
  EmptyFamily,
  InvalidDelta,
  InvalidConfig,
  ProbeOutOfRange,
  DomainMismatch,
  ArgOutOfRange,
  InvalidTNorm,
  PreconditionViolated,
  IdentityViolation,
  SymmetryViolation,
  TriangleViolation,
  NotAMetric,
  StarNotAdditiveOnHeaviside,
  UnknownPoint,
  GenerationFailed,
  EmptySubset,
  NegativeScale,
  NotLipschitz,
  BudgetExhausted,
  InsufficientSequence,
  IndexOutOfRange,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. `code()` identifies the contract that was broken;
/// `what()` carries the human-readable detail, including any witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pms
