#include "augtag/codec.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "augtag/error.hpp"

namespace augtag {

namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

std::array<const std::string*, 5> markers_of(const CodecConfig& c) {
  return {&c.open_marker, &c.close_marker, &c.sep_marker, &c.class_open,
          &c.class_close};
}

bool is_marker(std::string_view tok, const CodecConfig& c) {
  for (const std::string* m : markers_of(c)) {
    if (tok == *m) return true;
  }
  return false;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

bool equal_ignore_case(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

// The label text of a group must survive whitespace tokenization and must
// not be mistaken for structure.
void check_encodable_label(const std::string& natural, const std::string& raw,
                           const CodecConfig& config) {
  const auto parts = split_whitespace(natural);
  if (parts.empty() || join_tokens(parts) != natural) {
    throw Error(ErrorCode::UnencodableLabel,
                "label '" + raw + "' renders as '" + natural +
                    "', which is empty or not single-spaced");
  }
  for (const auto& p : parts) {
    if (is_marker(p, config)) {
      throw Error(ErrorCode::UnencodableLabel,
                  "label '" + raw + "' contains the marker '" + p + "'");
    }
  }
}

std::string resolve_strict(const std::vector<std::string>& label_tokens,
                           const LabelMap& labels) {
  return labels.denaturalize(join_tokens(label_tokens));
}

}  // namespace

void validate_config(const CodecConfig& config) {
  const auto ms = markers_of(config);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i]->empty() || has_space(*ms[i])) {
      throw Error(ErrorCode::InvalidConfig,
                  "markers must be non-empty and whitespace-free");
    }
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (*ms[i] == *ms[j]) {
        throw Error(ErrorCode::InvalidConfig,
                    "marker '" + *ms[i] + "' is used twice");
      }
    }
  }
  if (config.escaping_enabled) {
    if (config.escape_char.empty() || has_space(config.escape_char) ||
        is_marker(config.escape_char, config)) {
      throw Error(ErrorCode::InvalidConfig,
                  "escape must be non-empty, whitespace-free and not a marker");
    }
  }
}

// A token of the form esc^n + marker (n >= 0) gains one more escape.
std::string escape_token(std::string_view token, const CodecConfig& config) {
  std::string_view rest = token;
  const std::string_view esc = config.escape_char;
  while (true) {
    if (is_marker(rest, config)) return std::string(esc) + std::string(token);
    if (esc.empty() || !rest.starts_with(esc)) return std::string(token);
    rest.remove_prefix(esc.size());
  }
}

// Strips one escape from esc^m + marker (m >= 1); other tokens pass through.
std::string unescape_token(std::string_view token, const CodecConfig& config) {
  const std::string_view esc = config.escape_char;
  if (!config.escaping_enabled || esc.empty() || !token.starts_with(esc)) {
    return std::string(token);
  }
  std::string_view rest = token.substr(esc.size());
  std::string_view probe = rest;
  while (true) {
    if (is_marker(probe, config)) return std::string(rest);
    if (!probe.starts_with(esc)) return std::string(token);
    probe.remove_prefix(esc.size());
  }
}

std::string encode(const TaggedSentence& sentence, const LabelMap& labels,
                   const CodecConfig& config) {
  validate_config(config);
  validate_sentence(sentence);
  const SpanSet spans = tags_to_spans(sentence.tags, Scheme::Lenient);

  std::vector<std::string> out;
  out.reserve(sentence.size() + 4 * spans.size() + 3);
  if (sentence.sentence_class) {
    const std::string natural = labels.natural(*sentence.sentence_class);
    check_encodable_label(natural, *sentence.sentence_class, config);
    out.push_back(config.class_open);
    out.push_back(natural);
    out.push_back(config.class_close);
  }

  auto emit_token = [&](const std::string& tok) {
    if (is_marker(tok, config) && !config.escaping_enabled) {
      throw Error(ErrorCode::UnescapableToken,
                  "token '" + tok + "' collides with a marker");
    }
    out.push_back(config.escaping_enabled ? escape_token(tok, config) : tok);
  };

  std::size_t next_span = 0;
  for (std::size_t i = 0; i < sentence.size();) {
    if (next_span < spans.size() && spans[next_span].start == i) {
      const Span& s = spans[next_span++];
      const std::string natural = labels.natural(s.label);
      check_encodable_label(natural, s.label, config);
      out.push_back(config.open_marker);
      for (std::size_t j = s.start; j <= s.end; ++j) emit_token(sentence.tokens[j]);
      out.push_back(config.sep_marker);
      out.push_back(natural);
      out.push_back(config.close_marker);
      i = s.end + 1;
    } else {
      emit_token(sentence.tokens[i]);
      ++i;
    }
  }
  return join_tokens(out);
}

Decoded decode_strict(std::string_view text,
                      std::span<const std::string> source,
                      const LabelMap& labels, const CodecConfig& config) {
  validate_config(config);
  const std::vector<std::string> toks = split_whitespace(text);
  const std::size_t n = toks.size();
  Decoded result;
  std::size_t p = 0;

  // Collects non-marker tokens from p; stops at the first marker or the end.
  auto collect = [&](std::vector<std::string>& into, bool unescape) {
    while (p < n && !is_marker(toks[p], config)) {
      into.push_back(unescape ? unescape_token(toks[p], config) : toks[p]);
      ++p;
    }
  };

  if (n > 0 && toks[0] == config.class_open) {
    p = 1;
    std::vector<std::string> label;
    collect(label, false);
    if (p == n) {
      throw Error(ErrorCode::UnbalancedMarkers, "class group is not closed", 0);
    }
    if (toks[p] != config.class_close) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "unexpected '" + toks[p] + "' inside class group", p);
    }
    if (label.empty()) throw Error(ErrorCode::EmptyLabel, "empty class group", p);
    result.sentence_class = resolve_strict(label, labels);
    ++p;
  }

  std::vector<std::string> body;
  while (p < n) {
    const std::string& t = toks[p];
    if (t == config.class_open) {
      throw Error(ErrorCode::ClassGroupMisplaced,
                  "class group at position " + std::to_string(p) +
                      " is not sentence-initial",
                  p);
    }
    if (t == config.close_marker || t == config.sep_marker ||
        t == config.class_close) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "stray '" + t + "' at position " + std::to_string(p), p);
    }
    if (t != config.open_marker) {
      body.push_back(unescape_token(t, config));
      ++p;
      continue;
    }

    const std::size_t open_pos = p++;
    const std::size_t first = body.size();
    collect(body, true);
    if (p == n) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "group opened at " + std::to_string(open_pos) +
                      " is not closed",
                  open_pos);
    }
    if (toks[p] != config.sep_marker) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "expected '" + config.sep_marker + "' at position " +
                      std::to_string(p) + ", found '" + toks[p] + "'",
                  p);
    }
    if (body.size() == first) {
      throw Error(ErrorCode::EmptySpanGroup,
                  "group at " + std::to_string(open_pos) + " has no tokens",
                  open_pos);
    }
    ++p;
    std::vector<std::string> label;
    collect(label, false);
    if (p == n) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "group opened at " + std::to_string(open_pos) +
                      " is not closed",
                  open_pos);
    }
    if (toks[p] != config.close_marker) {
      throw Error(ErrorCode::UnbalancedMarkers,
                  "expected '" + config.close_marker + "' at position " +
                      std::to_string(p) + ", found '" + toks[p] + "'",
                  p);
    }
    if (label.empty()) {
      throw Error(ErrorCode::EmptyLabel,
                  "group at " + std::to_string(open_pos) + " has no label",
                  open_pos);
    }
    result.spans.push_back(
        Span{first, body.size() - 1, resolve_strict(label, labels)});
    ++p;
  }

  const std::size_t common = std::min(body.size(), source.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (body[i] != source[i]) {
      throw Error(ErrorCode::TokenMismatch,
                  "token " + std::to_string(i) + " is '" + body[i] +
                      "', source has '" + source[i] + "'",
                  i);
    }
  }
  if (body.size() != source.size()) {
    throw Error(ErrorCode::TokenMismatch,
                "text has " + std::to_string(body.size()) +
                    " tokens, source has " + std::to_string(source.size()),
                common);
  }
  return result;
}

bool is_well_formed(std::string_view text, std::span<const std::string> source,
                    const LabelMap& labels,
                    const CodecConfig& config) noexcept {
  try {
    decode_strict(text, source, labels, config);
    return true;
  } catch (...) {
    return false;
  }
}

namespace {

struct BodyToken {
  std::string text;
  int group = -1;
};

struct Group {
  std::vector<std::string> label;
  bool closed = false;   // saw the close marker after the label
  bool labeled = false;  // saw the separator
  std::optional<std::string> raw;
};

class TolerantParser {
 public:
  TolerantParser(const std::vector<std::string>& toks, const LabelMap& labels,
                 const CodecConfig& config, DecodeDiagnostics& diag)
      : toks_(toks), labels_(labels), config_(config), diag_(diag) {}

  void run() {
    const std::size_t n = toks_.size();
    for (std::size_t p = 0; p < n; ++p) {
      const std::string& t = toks_[p];
      switch (state_) {
        case State::Outside:
          p = outside(p);
          break;
        case State::InSpan:
          in_span(p, t);
          break;
        case State::InNestedLabel:
          if (t == config_.close_marker) {
            --depth_;
            state_ = State::InSpan;
          } else if (t == config_.open_marker) {
            ++depth_;
            state_ = State::InSpan;
          }
          break;
        case State::InLabel:
          in_label(p, t);
          break;
      }
    }
    if (state_ == State::InSpan || state_ == State::InNestedLabel) {
      malformed("group at end of text has no label");
    } else if (state_ == State::InLabel) {
      malformed("last group is not closed");
      finish_group();
    }
  }

  std::vector<BodyToken> body;
  std::vector<Group> groups;
  std::optional<std::string> sentence_class;

 private:
  enum class State { Outside, InSpan, InNestedLabel, InLabel };

  void malformed(const std::string& note) {
    ++diag_.malformed_groups;
    diag_.notes.push_back(note);
  }

  void push_body(const std::string& tok, int group) {
    body.push_back(BodyToken{unescape_token(tok, config_), group});
  }

  std::size_t outside(std::size_t p) {
    const std::string& t = toks_[p];
    if (t == config_.class_open) return class_group(p);
    if (t == config_.open_marker) {
      groups.emplace_back();
      depth_ = 1;
      state_ = State::InSpan;
    } else if (t == config_.close_marker || t == config_.sep_marker ||
               t == config_.class_close) {
      malformed("stray '" + t + "' at position " + std::to_string(p));
    } else {
      push_body(t, -1);
    }
    return p;
  }

  std::size_t class_group(std::size_t p) {
    std::size_t q = p + 1;
    while (q < toks_.size() && !is_marker(toks_[q], config_)) ++q;
    const bool ok =
        q < toks_.size() && toks_[q] == config_.class_close && q > p + 1;
    if (!ok) {
      malformed("malformed class group at position " + std::to_string(p));
      return p;
    }
    std::string text = join_tokens(
        std::span<const std::string>(toks_).subspan(p + 1, q - p - 1));
    if (seen_class_) {
      diag_.notes.push_back("extra class group '" + text + "' ignored");
      return q;
    }
    seen_class_ = true;
    if (p != 0) {
      diag_.notes.push_back("class group at position " + std::to_string(p) +
                            " is not sentence-initial");
    }
    sentence_class = resolve(text, "class");
    return q;
  }

  void in_span(std::size_t p, const std::string& t) {
    if (t == config_.open_marker) {
      ++depth_;
      malformed("nested group at position " + std::to_string(p) + " flattened");
    } else if (t == config_.sep_marker) {
      if (depth_ == 1) {
        groups.back().labeled = true;
        state_ = State::InLabel;
      } else {
        state_ = State::InNestedLabel;
      }
    } else if (t == config_.close_marker) {
      if (depth_ > 1) {
        --depth_;
      } else {
        malformed("group closed at position " + std::to_string(p) +
                  " has no label");
        state_ = State::Outside;
      }
    } else if (t == config_.class_open || t == config_.class_close) {
      malformed("class marker inside group at position " + std::to_string(p));
    } else {
      push_body(t, static_cast<int>(groups.size()) - 1);
    }
  }

  void in_label(std::size_t p, const std::string& t) {
    Group& g = groups.back();
    if (t == config_.close_marker) {
      g.closed = true;
      finish_group();
      state_ = State::Outside;
    } else if (t == config_.open_marker) {
      malformed("group before position " + std::to_string(p) +
                " is not closed");
      finish_group();
      groups.emplace_back();
      depth_ = 1;
      state_ = State::InSpan;
    } else if (is_marker(t, config_)) {
      malformed("unexpected '" + t + "' in label at position " +
                std::to_string(p));
    } else {
      g.label.push_back(t);
    }
  }

  // Resolves the current group's label. An unclosed group may have swallowed
  // body tokens, so the longest resolvable label prefix wins and the rest
  // returns to the body.
  void finish_group() {
    Group& g = groups.back();
    if (g.label.empty()) {
      malformed("group has an empty label");
      return;
    }
    if (g.closed || labels_.is_identity()) {
      g.raw = resolve(join_tokens(g.label), "label");
      return;
    }
    for (std::size_t len = g.label.size(); len > 0; --len) {
      const std::string text = join_tokens(
          std::span<const std::string>(g.label).subspan(0, len));
      if (lookup(text)) {
        g.raw = resolve(text, "label");
        for (std::size_t i = len; i < g.label.size(); ++i) push_body(g.label[i], -1);
        g.label.resize(len);
        return;
      }
    }
    diag_.notes.push_back("label '" + join_tokens(g.label) +
                          "' of unclosed group is unknown; group dropped");
    for (const std::string& tok : g.label) push_body(tok, -1);
  }

  std::optional<std::string> lookup(const std::string& natural) const {
    if (auto raw = labels_.find_raw(natural)) return raw;
    return labels_.find_raw_case_insensitive(natural);
  }

  std::optional<std::string> resolve(const std::string& natural,
                                     const char* what) {
    if (auto raw = labels_.find_raw(natural)) return raw;
    if (auto raw = labels_.find_raw_case_insensitive(natural)) {
      diag_.notes.push_back(std::string(what) + " '" + natural +
                            "' matched case-insensitively");
      return raw;
    }
    diag_.notes.push_back(std::string("unknown ") + what + " '" + natural +
                          "' dropped");
    return std::nullopt;
  }

  const std::vector<std::string>& toks_;
  const LabelMap& labels_;
  const CodecConfig& config_;
  DecodeDiagnostics& diag_;
  State state_ = State::Outside;
  int depth_ = 0;
  bool seen_class_ = false;
};

// For each body token, the matched source index or -1. The alignment is a
// longest common subsequence; each body token takes the leftmost source
// position that still permits an optimal alignment.
std::vector<std::int64_t> align(const std::vector<BodyToken>& body,
                                std::span<const std::string> source,
                                bool ignore_case) {
  const std::size_t n = body.size();
  const std::size_t m = source.size();
  auto eq = [&](std::size_t i, std::size_t j) {
    return ignore_case ? equal_ignore_case(body[i].text, source[j])
                       : body[i].text == source[j];
  };
  std::vector<std::uint32_t> lcs((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return lcs[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = eq(i, j) ? at(i + 1, j + 1) + 1
                          : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::vector<std::int64_t> match(n, -1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n && j < m; ++i) {
    const std::uint32_t target = at(i, j);
    if (target == 0) break;
    for (std::size_t k = j; k < m; ++k) {
      if (eq(i, k) && at(i + 1, k + 1) + 1 == target) {
        match[i] = static_cast<std::int64_t>(k);
        j = k + 1;
        break;
      }
    }
  }
  return match;
}

}  // namespace

TolerantDecoded decode_tolerant(std::string_view text,
                                std::span<const std::string> source,
                                const LabelMap& labels,
                                const CodecConfig& config) {
  TolerantDecoded result;
  DecodeDiagnostics& diag = result.diagnostics;
  validate_config(config);

  const std::vector<std::string> toks = split_whitespace(text);
  TolerantParser parser(toks, labels, config, diag);
  parser.run();
  result.sentence_class = parser.sentence_class;

  const std::vector<std::int64_t> match =
      align(parser.body, source, config.case_insensitive_align);

  std::size_t matched = 0;
  for (std::int64_t m : match) matched += m >= 0;
  diag.dropped_output_tokens = parser.body.size() - matched;
  diag.unmatched_source_tokens = source.size() - matched;

  // Body order follows source order, so groups come out sorted.
  for (std::size_t i = 0; i < parser.body.size();) {
    const int gid = parser.body[i].group;
    if (gid < 0 || !parser.groups[static_cast<std::size_t>(gid)].raw) {
      ++i;
      continue;
    }
    const std::string& raw = *parser.groups[static_cast<std::size_t>(gid)].raw;
    std::size_t runs = 0;
    std::optional<Span> cur;
    for (; i < parser.body.size() && parser.body[i].group == gid; ++i) {
      if (match[i] < 0) continue;
      const auto pos = static_cast<std::size_t>(match[i]);
      if (cur && cur->end + 1 == pos) {
        cur->end = pos;
        continue;
      }
      if (cur) result.spans.push_back(*cur);
      cur = Span{pos, pos, raw};
      ++runs;
    }
    if (cur) result.spans.push_back(*cur);
    if (runs > 1) {
      diag.notes.push_back("group '" + raw + "' split into " +
                           std::to_string(runs) + " spans");
    }
  }

  if (diag.dropped_output_tokens) {
    diag.notes.push_back(std::to_string(diag.dropped_output_tokens) +
                         " output tokens not in source");
  }
  if (diag.unmatched_source_tokens) {
    diag.notes.push_back(std::to_string(diag.unmatched_source_tokens) +
                         " source tokens not generated");
  }
  diag.repaired = !diag.notes.empty() || diag.malformed_groups > 0;
  return result;
}

TaggedSentence materialize(std::span<const std::string> source,
                           const SpanSet& spans,
                           std::optional<std::string> sentence_class) {
  TaggedSentence s;
  s.tokens.assign(source.begin(), source.end());
  s.tags = spans_to_tags(spans, source.size());
  s.sentence_class = std::move(sentence_class);
  return s;
}

}  // namespace augtag
