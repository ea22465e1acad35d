#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcode {

enum class ErrorCode {
  UnsupportedLanguage,
  EmptyTree,
  EmptyCorpus,
  UnknownCharacter,
  IdOutOfRange,
  SequenceTooLong,
  EmptySequence,
  DimensionMismatch,
  ShapeMismatch,
  NonPositiveTemperature,
  BatchTooSmall,
  ZeroVector,
  EmptyCounts,
  InvalidConfig,
  MalformedRecord,
  DanglingPairId,
  IdentityAnchor,
  UnsupportedVersion,
  Io,
  Usage,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tcode
