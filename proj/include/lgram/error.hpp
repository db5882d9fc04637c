#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgram {

enum class ErrorCode {
  DimensionMismatch,
  InvalidVector,
  InvalidObject,
  NotSymmetric,
  WrongCount,
  IdentityCheckFailed,
  DomainError,
  NoCommonTangent,
  NegativeInput,
  HypothesisViolated,
  DegenerateDatum,
  NotDegenerate,
  NormalSearchFailed,
  NotUnitNormal,
  NoReliableKernel,
  TooManyObjects,
  InfeasibleParams,
  RejectionFailed,
  OutsideBall,
  SchemaViolation,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI reports the code name verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace lgram
