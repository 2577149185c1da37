#include "phm/error.hpp"

namespace phm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::VariableIndexOutOfRange: return "VariableIndexOutOfRange";
    case ErrorKind::MetricNotSPD: return "MetricNotSPD";
    case ErrorKind::MetricNotPD: return "MetricNotPD";
    case ErrorKind::TargetNotKaehler: return "TargetNotKaehler";
    case ErrorKind::SourceNotKaehler: return "SourceNotKaehler";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPHWCAtPoint: return "NotPHWCAtPoint";
    case ErrorKind::RankDeficiencyAmbiguous: return "RankDeficiencyAmbiguous";
    case ErrorKind::RankJumpOnStencil: return "RankJumpOnStencil";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace phm
