#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phm {

enum class ErrorKind {
  DivisionNearZero,
  VariableIndexOutOfRange,
  MetricNotSPD,
  MetricNotPD,
  TargetNotKaehler,
  SourceNotKaehler,
  DimensionMismatch,
  NotPHWCAtPoint,
  RankDeficiencyAmbiguous,
  RankJumpOnStencil,
  StepSizeUnderflow,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the toolkit is reported through this type.
/// The kind is stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phm
