#include "transformcode/error.hpp"

namespace tcode {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnknownCharacter: return "UnknownCharacter";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::SequenceTooLong: return "SequenceTooLong";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::BatchTooSmall: return "BatchTooSmall";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DanglingPairId: return "DanglingPairId";
    case ErrorCode::IdentityAnchor: return "IdentityAnchor";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "UsageError";
  }
  return "Unknown";
}

}  // namespace tcode
