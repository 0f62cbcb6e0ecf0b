#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "augtag/core.hpp"
#include "augtag/naturalize.hpp"

namespace augtag {

// Version of the augmented text grammar written by the encoder.
inline constexpr std::string_view kFormatGrammarVersion = "1";

struct CodecConfig {
  std::string open_marker = "[";
  std::string close_marker = "]";
  std::string sep_marker = "|";
  std::string class_open = "((";
  std::string class_close = "))";
  std::string escape_char = "\\";
  bool escaping_enabled = true;
  // Compare body and source tokens ignoring ASCII case when aligning in the
  // tolerant decoder.
  bool case_insensitive_align = false;
};

// Throws Error(InvalidConfig) unless the five markers are non-empty,
// whitespace-free and pairwise distinct, and the escape is usable.
void validate_config(const CodecConfig& config);

struct Decoded {
  SpanSet spans;
  std::optional<std::string> sentence_class;
};

struct DecodeDiagnostics {
  bool repaired = false;
  std::size_t dropped_output_tokens = 0;
  std::size_t unmatched_source_tokens = 0;
  std::size_t malformed_groups = 0;
  std::vector<std::string> notes;
};

struct TolerantDecoded {
  SpanSet spans;
  std::optional<std::string> sentence_class;
  DecodeDiagnostics diagnostics;
};

// Repeats the sentence, wrapping each chunk as "[ tokens | label ]" and
// prefixing "(( class ))" when the sentence has a class. Labels go through
// `labels`; source tokens that collide with a marker are escaped.
std::string encode(const TaggedSentence& sentence, const LabelMap& labels,
                   const CodecConfig& config = {});

// Exact inverse of encode. Throws on any deviation from the grammar or from
// the source tokens.
Decoded decode_strict(std::string_view text,
                      std::span<const std::string> source,
                      const LabelMap& labels, const CodecConfig& config = {});

// Total decoder: aligns the generated body to `source` by LCS and recovers
// whatever groups survive. Never throws on text content.
TolerantDecoded decode_tolerant(std::string_view text,
                                std::span<const std::string> source,
                                const LabelMap& labels,
                                const CodecConfig& config = {});

bool is_well_formed(std::string_view text, std::span<const std::string> source,
                    const LabelMap& labels,
                    const CodecConfig& config = {}) noexcept;

// Escaping applied to one source token, and its inverse.
std::string escape_token(std::string_view token, const CodecConfig& config);
std::string unescape_token(std::string_view token, const CodecConfig& config);

// Helper for callers holding a full sentence: returns tags of source length.
TaggedSentence materialize(std::span<const std::string> source,
                           const SpanSet& spans,
                           std::optional<std::string> sentence_class);

}  // namespace augtag
