#include "augtag/core.hpp"

#include <algorithm>

#include "augtag/error.hpp"

namespace augtag {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

ParsedTag parse_tag(std::string_view tag, std::size_t index) {
  if (tag == "O") return {TagPrefix::Outside, {}};
  if (tag.size() < 3 || tag[1] != '-') {
    throw Error(ErrorCode::InvalidTag,
                "tag '" + std::string(tag) + "' at index " +
                    std::to_string(index) + " is not O, B-X, I-X, E-X or S-X",
                index);
  }
  std::string_view label = tag.substr(2);
  switch (tag[0]) {
    case 'B':
    case 'S':
      return {TagPrefix::Begin, label};
    case 'I':
    case 'E':
      return {TagPrefix::Inside, label};
    default:
      throw Error(ErrorCode::InvalidTag,
                  "unknown tag prefix in '" + std::string(tag) + "' at index " +
                      std::to_string(index),
                  index);
  }
}

SpanSet tags_to_spans(std::span<const std::string> tags, Scheme scheme) {
  SpanSet spans;
  bool open = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const ParsedTag parsed = parse_tag(tags[i], i);
    if (parsed.prefix == TagPrefix::Outside) {
      open = false;
      continue;
    }
    const bool continues = parsed.prefix == TagPrefix::Inside && open &&
                           spans.back().label == parsed.label;
    if (continues) {
      spans.back().end = i;
      continue;
    }
    if (parsed.prefix == TagPrefix::Inside && scheme == Scheme::Strict) {
      throw Error(ErrorCode::MalformedScheme,
                  "orphan '" + tags[i] + "' at index " + std::to_string(i), i);
    }
    spans.push_back(Span{i, i, std::string(parsed.label)});
    open = true;
  }
  return spans;
}

void validate_spans(const SpanSet& spans, std::size_t length) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& s = spans[i];
    if (s.start > s.end || s.end >= length) {
      throw Error(ErrorCode::OutOfBounds,
                  "span (" + std::to_string(s.start) + "," +
                      std::to_string(s.end) + ") outside [0," +
                      std::to_string(length) + ")",
                  i);
    }
    if (s.label.empty()) {
      throw Error(ErrorCode::InvalidTag, "span with empty label", i);
    }
    if (i > 0 && spans[i - 1].end >= s.start) {
      const Span& p = spans[i - 1];
      throw Error(ErrorCode::OverlapError,
                  "spans (" + std::to_string(p.start) + "," +
                      std::to_string(p.end) + "," + p.label + ") and (" +
                      std::to_string(s.start) + "," + std::to_string(s.end) +
                      "," + s.label + ") overlap or are out of order",
                  i);
    }
  }
}

std::vector<std::string> spans_to_tags(const SpanSet& spans,
                                       std::size_t length) {
  validate_spans(spans, length);
  std::vector<std::string> tags(length, "O");
  for (const Span& s : spans) {
    tags[s.start] = "B-" + s.label;
    for (std::size_t i = s.start + 1; i <= s.end; ++i) tags[i] = "I-" + s.label;
  }
  return tags;
}

std::vector<std::string> canonicalize_iob2(std::span<const std::string> tags) {
  return spans_to_tags(tags_to_spans(tags, Scheme::Lenient), tags.size());
}

bool is_valid_iob2(std::span<const std::string> tags) {
  bool open = false;
  std::string_view label;
  for (const std::string& tag : tags) {
    if (tag == "O") {
      open = false;
      continue;
    }
    if (tag.size() < 3 || tag[1] != '-') return false;
    std::string_view cur = std::string_view(tag).substr(2);
    if (tag[0] == 'B') {
      open = true;
      label = cur;
    } else if (tag[0] == 'I') {
      if (!open || cur != label) return false;
    } else {
      return false;
    }
  }
  return true;
}

void validate_sentence(const TaggedSentence& sentence) {
  if (sentence.tokens.size() != sentence.tags.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(sentence.tokens.size()) + " tokens but " +
                    std::to_string(sentence.tags.size()) + " tags");
  }
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const std::string& tok = sentence.tokens[i];
    if (tok.empty() || std::any_of(tok.begin(), tok.end(), is_space)) {
      throw Error(ErrorCode::InvalidArgument,
                  "token " + std::to_string(i) +
                      " is empty or contains whitespace",
                  i);
    }
    parse_tag(sentence.tags[i], i);
  }
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace augtag
