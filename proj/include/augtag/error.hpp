#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace augtag {

enum class ErrorCode {
  InvalidTag,
  MalformedScheme,
  OverlapError,
  OutOfBounds,
  InvalidConfig,
  UnescapableToken,
  UnencodableLabel,
  ClassGroupMisplaced,
  UnbalancedMarkers,
  EmptySpanGroup,
  EmptyLabel,
  UnknownNaturalLabel,
  TokenMismatch,
  CollisionError,
  InsufficientCorpus,
  UnknownDomain,
  InvalidArgument,
  LengthMismatch,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `index` carries the offending
// position when the error has one (tag index, marker position, line number).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace augtag
