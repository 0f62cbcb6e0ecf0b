#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace augtag {

// Tokens with aligned BIO tags and an optional sentence-level class.
struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::optional<std::string> sentence_class;
  std::optional<std::string> domain;
  std::optional<std::string> task;

  std::size_t size() const noexcept { return tokens.size(); }
  bool operator==(const TaggedSentence&) const = default;
};

// Inclusive token range [start, end] carrying one label.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;

  std::size_t length() const noexcept { return end - start + 1; }
  auto operator<=>(const Span&) const = default;
};

// Sorted, pairwise non-overlapping chunks.
using SpanSet = std::vector<Span>;

enum class Scheme { Strict, Lenient };

enum class TagPrefix { Outside, Begin, Inside };

struct ParsedTag {
  TagPrefix prefix = TagPrefix::Outside;
  std::string_view label;
};

// Parses "O", "B-X", "I-X" and the BIOES forms "E-X" (read as I-X) and
// "S-X" (read as B-X). The label is everything after the first hyphen.
// Throws Error(InvalidTag) on anything else.
ParsedTag parse_tag(std::string_view tag, std::size_t index = 0);

// Maximal chunks of a tag sequence. Strict mode rejects an I-X that does not
// continue a chunk of X; lenient mode opens a new chunk there.
SpanSet tags_to_spans(std::span<const std::string> tags,
                      Scheme scheme = Scheme::Lenient);

// Inverse of tags_to_spans. Emits IOB2.
std::vector<std::string> spans_to_tags(const SpanSet& spans, std::size_t length);

// Checks sortedness, bounds and non-overlap. Throws OverlapError/OutOfBounds.
void validate_spans(const SpanSet& spans, std::size_t length);

std::vector<std::string> canonicalize_iob2(std::span<const std::string> tags);

bool is_valid_iob2(std::span<const std::string> tags);

// Token/tag length agreement, token shape and tag syntax.
void validate_sentence(const TaggedSentence& sentence);

std::string join_tokens(std::span<const std::string> tokens);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view text);

}  // namespace augtag
