#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "augtag/codec.hpp"
#include "augtag/core.hpp"

namespace augtag {

enum class ColumnSep { Tab, Space };

ColumnSep parse_column_sep(std::string_view name);

// Streams blank-line separated CoNLL blocks. Column 0 is the token, the last
// column the tag; blocks starting with -DOCSTART- are skipped. Every line of
// a block must have the same number of columns (at least two).
class ConllReader {
 public:
  ConllReader(std::istream& in, ColumnSep sep) : in_(in), sep_(sep) {}

  // False at end of input. Throws Error(ParseError) with the line number.
  bool next(TaggedSentence& out);
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  ColumnSep sep_;
  std::size_t line_ = 0;
};

std::vector<TaggedSentence> read_conll(std::istream& in,
                                       ColumnSep sep = ColumnSep::Tab);
void write_conll_sentence(std::ostream& out, const TaggedSentence& s,
                          ColumnSep sep = ColumnSep::Tab);
void write_conll(std::ostream& out, std::span<const TaggedSentence> sentences,
                 ColumnSep sep = ColumnSep::Tab);

// JSONL record fields, in output order: tokens, tags, class, domain, task.
nlohmann::ordered_json to_record(const TaggedSentence& s);
// Reads the record fields of `j` and validates the sentence. `line` is used
// in error messages.
TaggedSentence from_record(const nlohmann::ordered_json& j, std::size_t line = 0);

// One JSON object per non-blank line.
class JsonlReader {
 public:
  explicit JsonlReader(std::istream& in) : in_(in) {}

  bool next(nlohmann::ordered_json& out);
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<TaggedSentence> read_jsonl(std::istream& in);
void write_jsonl(std::ostream& out, std::span<const TaggedSentence> sentences);

// "TASK: tok tok ..." and records the task on the sentence; an empty task
// yields the bare tokens.
std::string apply_task_prefix(TaggedSentence& sentence, std::string_view task);
// Model input for a sentence, using its recorded task if any.
std::string model_input(const TaggedSentence& sentence);

struct CorpusStats {
  std::size_t n_sentences = 0;
  std::size_t n_tokens = 0;
  std::size_t n_chunks = 0;
  double mean_length = 0.0;
  std::set<std::string> labels;
  std::set<std::string> classes;
};

CorpusStats corpus_stats(std::span<const TaggedSentence> sentences);
std::string stats_to_json(const CorpusStats& stats, int indent = -1);

struct CorruptionSpec {
  double p_token_drop = 0.0;
  double p_token_insert = 0.0;
  double p_label_swap = 0.0;
  double p_truncate = 0.0;
  std::uint64_t seed = 0;
};

// Throws Error(InvalidArgument) if a probability is outside [0, 1].
void validate_spec(const CorruptionSpec& spec);

// Simulates generation faults on augmented text: group labels swapped with
// another group's label, tokens dropped, copies of random tokens inserted,
// and truncation to a proper prefix. Deterministic per seed.
std::string corrupt(std::string_view text, const CorruptionSpec& spec,
                    const CodecConfig& config = {});

}  // namespace augtag
