#include "clustest/error.hpp"

namespace clustest {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kPortConflict: return "PortConflict";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kIdOutOfRange: return "IdOutOfRange";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kWorkBudgetExceeded: return "WorkBudgetExceeded";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotInSupport: return "NotInSupport";
    case ErrorCode::kUnevenLabelCounts: return "UnevenLabelCounts";
    case ErrorCode::kTooFewVertices: return "TooFewVertices";
    case ErrorCode::kBadN: return "BadN";
    case ErrorCode::kExhaustedLabelClass: return "ExhaustedLabelClass";
    case ErrorCode::kInfeasibleHistory: return "InfeasibleHistory";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace clustest
