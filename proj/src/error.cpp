#include "augtag/error.hpp"

namespace augtag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTag: return "InvalidTag";
    case ErrorCode::MalformedScheme: return "MalformedScheme";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnescapableToken: return "UnescapableToken";
    case ErrorCode::UnencodableLabel: return "UnencodableLabel";
    case ErrorCode::ClassGroupMisplaced: return "ClassGroupMisplaced";
    case ErrorCode::UnbalancedMarkers: return "UnbalancedMarkers";
    case ErrorCode::EmptySpanGroup: return "EmptySpanGroup";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::UnknownNaturalLabel: return "UnknownNaturalLabel";
    case ErrorCode::TokenMismatch: return "TokenMismatch";
    case ErrorCode::CollisionError: return "CollisionError";
    case ErrorCode::InsufficientCorpus: return "InsufficientCorpus";
    case ErrorCode::UnknownDomain: return "UnknownDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace augtag
