#include "augtag/ingest.hpp"

#include <istream>
#include <ostream>

#include "augtag/error.hpp"
#include "augtag/random.hpp"

namespace augtag {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what,
              line);
}

std::vector<std::string> split_columns(const std::string& line, ColumnSep sep) {
  if (sep == ColumnSep::Space) return split_whitespace(line);
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

ColumnSep parse_column_sep(std::string_view name) {
  if (name == "tab") return ColumnSep::Tab;
  if (name == "space") return ColumnSep::Space;
  throw Error(ErrorCode::InvalidArgument,
              "column separator must be 'tab' or 'space'");
}

bool ConllReader::next(TaggedSentence& out) {
  std::string line;
  while (true) {
    out = TaggedSentence{};
    std::size_t columns = 0;
    bool docstart = false;
    bool any = false;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (blank(line)) {
        if (any) break;
        continue;
      }
      // Document separators are often space-separated even in tab files.
      if (!any && line.rfind("-DOCSTART-", 0) == 0) {
        docstart = any = true;
        continue;
      }
      if (docstart) continue;
      const auto cols = split_columns(line, sep_);
      if (cols.size() < 2) parse_error(line_, "expected at least two columns");
      if (!any) {
        columns = cols.size();
        any = true;
      } else if (cols.size() != columns) {
        parse_error(line_, "expected " + std::to_string(columns) +
                               " columns, found " + std::to_string(cols.size()));
      }
      const std::string& token = cols.front();
      if (token.empty() || token.find_first_of(" \t") != std::string::npos) {
        parse_error(line_, "empty token");
      }
      try {
        parse_tag(cols.back(), out.tags.size());
      } catch (const Error& e) {
        parse_error(line_, e.what());
      }
      out.tokens.push_back(token);
      out.tags.push_back(cols.back());
    }
    if (!any) return false;
    if (!docstart) return true;
  }
}

std::vector<TaggedSentence> read_conll(std::istream& in, ColumnSep sep) {
  ConllReader reader(in, sep);
  std::vector<TaggedSentence> out;
  TaggedSentence s;
  while (reader.next(s)) out.push_back(std::move(s));
  return out;
}

void write_conll_sentence(std::ostream& out, const TaggedSentence& s,
                          ColumnSep sep) {
  const char c = sep == ColumnSep::Tab ? '\t' : ' ';
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    out << s.tokens[i] << c << s.tags[i] << '\n';
  }
  out << '\n';
}

void write_conll(std::ostream& out, std::span<const TaggedSentence> sentences,
                 ColumnSep sep) {
  for (const auto& s : sentences) write_conll_sentence(out, s, sep);
}

nlohmann::ordered_json to_record(const TaggedSentence& s) {
  nlohmann::ordered_json j;
  j["tokens"] = s.tokens;
  j["tags"] = s.tags;
  if (s.sentence_class) j["class"] = *s.sentence_class;
  if (s.domain) j["domain"] = *s.domain;
  if (s.task) j["task"] = *s.task;
  return j;
}

TaggedSentence from_record(const nlohmann::ordered_json& j, std::size_t line) {
  if (!j.is_object()) parse_error(line, "record is not a JSON object");
  TaggedSentence s;
  auto strings = [&](const char* key, std::vector<std::string>& into) {
    auto it = j.find(key);
    if (it == j.end()) parse_error(line, std::string("missing field '") + key + "'");
    if (!it->is_array()) parse_error(line, std::string("'") + key + "' is not an array");
    for (const auto& v : *it) {
      if (!v.is_string()) parse_error(line, std::string("'") + key + "' holds a non-string");
      into.push_back(v.get<std::string>());
    }
  };
  auto optional = [&](const char* key, std::optional<std::string>& into) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    if (!it->is_string()) parse_error(line, std::string("'") + key + "' is not a string");
    into = it->get<std::string>();
  };
  strings("tokens", s.tokens);
  strings("tags", s.tags);
  optional("class", s.sentence_class);
  optional("domain", s.domain);
  optional("task", s.task);
  try {
    validate_sentence(s);
  } catch (const Error& e) {
    parse_error(line, e.what());
  }
  return s;
}

bool JsonlReader::next(nlohmann::ordered_json& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (blank(line) || (line.size() == 1 && line[0] == '\r')) continue;
    try {
      out = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::ordered_json::parse_error& e) {
      parse_error(line_, std::string("invalid JSON: ") + e.what());
    }
    return true;
  }
  return false;
}

std::vector<TaggedSentence> read_jsonl(std::istream& in) {
  JsonlReader reader(in);
  std::vector<TaggedSentence> out;
  nlohmann::ordered_json j;
  while (reader.next(j)) out.push_back(from_record(j, reader.line()));
  return out;
}

void write_jsonl(std::ostream& out, std::span<const TaggedSentence> sentences) {
  for (const auto& s : sentences) out << to_record(s).dump() << '\n';
}

std::string apply_task_prefix(TaggedSentence& sentence, std::string_view task) {
  if (task.empty()) return join_tokens(sentence.tokens);
  sentence.task = std::string(task);
  return std::string(task) + ": " + join_tokens(sentence.tokens);
}

std::string model_input(const TaggedSentence& sentence) {
  if (!sentence.task || sentence.task->empty()) return join_tokens(sentence.tokens);
  return *sentence.task + ": " + join_tokens(sentence.tokens);
}

CorpusStats corpus_stats(std::span<const TaggedSentence> sentences) {
  CorpusStats st;
  st.n_sentences = sentences.size();
  for (const auto& s : sentences) {
    st.n_tokens += s.tokens.size();
    for (const Span& span : tags_to_spans(s.tags, Scheme::Lenient)) {
      ++st.n_chunks;
      st.labels.insert(span.label);
    }
    if (s.sentence_class) st.classes.insert(*s.sentence_class);
  }
  if (st.n_sentences) {
    st.mean_length = static_cast<double>(st.n_tokens) / static_cast<double>(st.n_sentences);
  }
  return st;
}

std::string stats_to_json(const CorpusStats& st, int indent) {
  nlohmann::ordered_json j;
  j["sentences"] = st.n_sentences;
  j["tokens"] = st.n_tokens;
  j["mean_length"] = st.mean_length;
  j["chunks"] = st.n_chunks;
  j["distinct_labels"] = st.labels.size();
  j["distinct_classes"] = st.classes.size();
  j["labels"] = std::vector<std::string>(st.labels.begin(), st.labels.end());
  j["classes"] = std::vector<std::string>(st.classes.begin(), st.classes.end());
  return j.dump(indent);
}

void validate_spec(const CorruptionSpec& spec) {
  for (double p : {spec.p_token_drop, spec.p_token_insert, spec.p_label_swap,
                   spec.p_truncate}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
    }
  }
}

std::string corrupt(std::string_view text, const CorruptionSpec& spec,
                    const CodecConfig& config) {
  validate_spec(spec);
  if (spec.p_token_drop == 0.0 && spec.p_token_insert == 0.0 &&
      spec.p_label_swap == 0.0 && spec.p_truncate == 0.0) {
    return std::string(text);
  }
  Rng rng(spec.seed);
  std::vector<std::string> toks = split_whitespace(text);

  auto is_marker = [&](const std::string& t) {
    return t == config.open_marker || t == config.close_marker ||
           t == config.sep_marker || t == config.class_open ||
           t == config.class_close;
  };

  // Label ranges [begin, end) follow each separator up to the next marker.
  struct Range {
    std::size_t begin, end;
  };
  std::vector<Range> ranges;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] != config.sep_marker) continue;
    std::size_t j = i + 1;
    while (j < toks.size() && !is_marker(toks[j])) ++j;
    ranges.push_back({i + 1, j});
    i = j - 1;
  }
  if (ranges.size() >= 2 && spec.p_label_swap > 0.0) {
    std::vector<std::vector<std::string>> original;
    for (const Range& r : ranges) {
      original.emplace_back(toks.begin() + static_cast<std::ptrdiff_t>(r.begin),
                            toks.begin() + static_cast<std::ptrdiff_t>(r.end));
    }
    std::vector<std::vector<std::string>> labels = original;
    for (std::size_t g = 0; g < ranges.size(); ++g) {
      if (!rng.bernoulli(spec.p_label_swap)) continue;
      std::size_t other = rng.below(ranges.size() - 1);
      if (other >= g) ++other;
      labels[g] = original[other];
    }
    std::vector<std::string> rebuilt;
    std::size_t pos = 0;
    for (std::size_t g = 0; g < ranges.size(); ++g) {
      rebuilt.insert(rebuilt.end(), toks.begin() + static_cast<std::ptrdiff_t>(pos),
                     toks.begin() + static_cast<std::ptrdiff_t>(ranges[g].begin));
      rebuilt.insert(rebuilt.end(), labels[g].begin(), labels[g].end());
      pos = ranges[g].end;
    }
    rebuilt.insert(rebuilt.end(), toks.begin() + static_cast<std::ptrdiff_t>(pos),
                   toks.end());
    toks = std::move(rebuilt);
  }

  std::vector<std::string> out;
  out.reserve(toks.size());
  for (const std::string& t : toks) {
    if (!rng.bernoulli(spec.p_token_drop)) out.push_back(t);
    if (!toks.empty() && rng.bernoulli(spec.p_token_insert)) {
      out.push_back(toks[rng.below(toks.size())]);
    }
  }
  if (!out.empty() && rng.bernoulli(spec.p_truncate)) {
    out.resize(rng.below(out.size()));
  }
  return join_tokens(out);
}

}  // namespace augtag
