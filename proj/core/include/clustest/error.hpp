#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clustest {

enum class ErrorCode {
  kPortConflict,
  kSelfLoop,
  kDuplicateEdge,
  kIdOutOfRange,
  kFormatError,
  kWorkBudgetExceeded,
  kInvalidK,
  kIndexOutOfRange,
  kTooLarge,
  kNotInSupport,
  kUnevenLabelCounts,
  kTooFewVertices,
  kBadN,
  kExhaustedLabelClass,
  kInfeasibleHistory,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. The code identifies the failure
/// class; the message names the offending item (edge, field, index, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clustest
