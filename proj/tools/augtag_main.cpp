// augtag: command-line front end for the augmented-text tagging codec.
//
// Every subcommand streams JSONL (or CoNLL) records and preserves input
// order. Exit codes: 0 success, 1 validation errors, 2 I/O errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "augtag/batch.hpp"
#include "augtag/codec.hpp"
#include "augtag/episodes.hpp"
#include "augtag/error.hpp"
#include "augtag/eval.hpp"
#include "augtag/ingest.hpp"
#include "augtag/naturalize.hpp"

namespace {

using namespace augtag;
using Json = nlohmann::ordered_json;

constexpr std::size_t kChunk = 2048;
constexpr const char* kVersion = "1.0.0";

// Raised for validation failures already reported line by line.
struct Reported {};

struct InputFile {
  std::unique_ptr<std::ifstream> file;
  std::istream* stream = nullptr;

  explicit InputFile(const std::string& path) {
    if (path == "-") {
      stream = &std::cin;
      return;
    }
    file = std::make_unique<std::ifstream>(path);
    if (!*file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    stream = file.get();
  }
  std::istream& get() { return *stream; }
};

struct OutputFile {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;

  explicit OutputFile(const std::string& path) {
    if (path == "-") {
      stream = &std::cout;
      return;
    }
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    stream = file.get();
  }
  std::ostream& get() { return *stream; }
  void finish() {
    stream->flush();
    if (!*stream) throw Error(ErrorCode::IoError, "write failed");
  }
};

struct IoOptions {
  std::string input = "-";
  std::string output = "-";
  std::string format = "jsonl";
  std::string sep = "tab";
};

struct LabelOptions {
  std::string labelmap;
  std::string builtin;
  std::string labels;
  bool natural = false;
  bool original = false;
  bool numeric = false;
};

struct CodecOptions {
  CodecConfig config;
  bool no_escape = false;
};

void add_io(CLI::App* cmd, IoOptions& io, bool with_format = true) {
  cmd->add_option("-i,--input", io.input, "Input file, '-' for stdin");
  cmd->add_option("-o,--output", io.output, "Output file, '-' for stdout");
  if (with_format) {
    cmd->add_option("--format", io.format, "Corpus format")
        ->check(CLI::IsMember({"jsonl", "conll"}));
    cmd->add_option("--sep", io.sep, "CoNLL column separator")
        ->check(CLI::IsMember({"tab", "space"}));
  }
}

void add_labels(CLI::App* cmd, LabelOptions& lo) {
  cmd->add_option("--labelmap", lo.labelmap, "Override table, raw<TAB>natural");
  cmd->add_option("--table", lo.builtin, "Built-in override table")
      ->check(CLI::IsMember({"conll", "ontonotes"}));
  cmd->add_option("--labels", lo.labels, "File of raw labels, one per line");
  auto* nat = cmd->add_flag("--natural", lo.natural,
                            "Natural labels: table entries, then splitting rules (default)");
  auto* orig = cmd->add_flag("--original", lo.original, "Keep raw labels");
  auto* num = cmd->add_flag("--numeric", lo.numeric, "Number labels in sorted order");
  nat->excludes(orig)->excludes(num);
  orig->excludes(num);
}

void add_codec(CLI::App* cmd, CodecOptions& co) {
  CodecConfig& c = co.config;
  cmd->add_option("--open-marker", c.open_marker);
  cmd->add_option("--close-marker", c.close_marker);
  cmd->add_option("--sep-marker", c.sep_marker);
  cmd->add_option("--class-open", c.class_open);
  cmd->add_option("--class-close", c.class_close);
  cmd->add_option("--escape", c.escape_char);
  cmd->add_flag("--no-escape", co.no_escape, "Reject marker tokens instead of escaping");
  cmd->add_flag("--ignore-case-align", c.case_insensitive_align,
                "Align generated and source tokens ignoring ASCII case");
}

CodecConfig codec_config(const CodecOptions& co) {
  CodecConfig c = co.config;
  c.escaping_enabled = !co.no_escape;
  validate_config(c);
  return c;
}

std::set<std::string> read_label_list(const std::string& path) {
  InputFile in(path);
  std::set<std::string> labels;
  std::string line;
  while (std::getline(in.get(), line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    labels.insert(line);
  }
  return labels;
}

// Returns the map and whether it already covers every label the input may
// use (decoding needs the full reverse map up front).
std::pair<LabelMap, bool> make_labelmap(const LabelOptions& lo) {
  if (lo.original) return {LabelMap::identity(), true};
  std::optional<LabelTable> table;
  if (!lo.labelmap.empty()) {
    InputFile in(lo.labelmap);
    table = read_label_table(in.get());
  } else if (!lo.builtin.empty()) {
    table = *tables::builtin(lo.builtin);
  }
  std::set<std::string> labels;
  if (!lo.labels.empty()) labels = read_label_list(lo.labels);
  const LabelMode mode = lo.numeric ? LabelMode::Numeric : LabelMode::TableRules;
  const bool complete = !lo.labels.empty() || (table && !lo.numeric);
  return {build_labelmap(labels, table ? &*table : nullptr, mode), complete};
}

void report(const Error& e, std::size_t record) {
  std::cerr << "augtag: record " << record << ": " << e.what() << '\n';
}

// Reads corpus records in chunks, keeping the raw JSON for passthrough.
class CorpusSource {
 public:
  CorpusSource(std::istream& in, const IoOptions& io)
      : conll_(io.format == "conll"),
        conll_reader_(in, parse_column_sep(io.sep)),
        jsonl_reader_(in) {}

  // Fills up to `n` sentences; false once nothing is left.
  bool next_chunk(std::vector<TaggedSentence>& out, std::vector<std::size_t>& lines,
                  std::size_t n = kChunk) {
    out.clear();
    lines.clear();
    TaggedSentence s;
    Json j;
    while (out.size() < n) {
      if (conll_) {
        if (!conll_reader_.next(s)) break;
        lines.push_back(conll_reader_.line());
        out.push_back(std::move(s));
      } else {
        if (!jsonl_reader_.next(j)) break;
        lines.push_back(jsonl_reader_.line());
        out.push_back(from_record(j, jsonl_reader_.line()));
      }
    }
    return !out.empty();
  }

  std::vector<TaggedSentence> read_all() {
    std::vector<TaggedSentence> all, chunk;
    std::vector<std::size_t> lines;
    while (next_chunk(chunk, lines)) {
      for (auto& s : chunk) all.push_back(std::move(s));
    }
    return all;
  }

 private:
  bool conll_;
  ConllReader conll_reader_;
  JsonlReader jsonl_reader_;
};

void write_corpus(std::ostream& out, const std::vector<TaggedSentence>& ss,
                  const IoOptions& io) {
  if (io.format == "conll") {
    write_conll(out, ss, parse_column_sep(io.sep));
  } else {
    write_jsonl(out, ss);
  }
}

// ---------------------------------------------------------------- encode

struct EncodeOptions {
  IoOptions io;
  LabelOptions labels;
  CodecOptions codec;
  std::string task;
  std::string emit_labelmap;
  bool text_only = false;
};

int cmd_encode(const EncodeOptions& o) {
  const CodecConfig cfg = codec_config(o.codec);
  auto [map, complete] = make_labelmap(o.labels);
  InputFile in(o.io.input);
  OutputFile out(o.io.output);
  CorpusSource source(in.get(), o.io);

  std::vector<TaggedSentence> chunk;
  std::vector<std::size_t> lines;
  std::size_t failures = 0;
  while (source.next_chunk(chunk, lines)) {
    if (!map.is_identity()) {
      for (const auto& s : chunk) {
        for (const Span& span : tags_to_spans(s.tags, Scheme::Lenient)) map.insert(span.label);
        if (s.sentence_class) map.insert(*s.sentence_class);
      }
    }
    if (!o.task.empty()) {
      for (auto& s : chunk) apply_task_prefix(s, o.task);
    }
    const auto texts = batch::try_encode_all(chunk, map, cfg);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (const auto* e = std::get_if<Error>(&texts[i])) {
        report(*e, lines[i]);
        ++failures;
        continue;
      }
      const std::string& text = std::get<std::string>(texts[i]);
      if (o.text_only) {
        out.get() << text << '\n';
        continue;
      }
      Json rec = to_record(chunk[i]);
      rec["input"] = model_input(chunk[i]);
      rec["text"] = text;
      out.get() << rec.dump() << '\n';
    }
  }
  out.finish();
  if (!o.emit_labelmap.empty()) {
    OutputFile table(o.emit_labelmap);
    if (map.is_identity()) {
      table.get() << "# identity map\n";
    } else {
      write_label_table(table.get(), map);
    }
    table.finish();
  }
  (void)complete;
  if (failures) throw Reported{};
  return 0;
}

// ---------------------------------------------------------------- decode

struct DecodeOptions {
  IoOptions io;
  LabelOptions labels;
  CodecOptions codec;
  bool strict = false;
  bool tolerant = false;
  bool diagnostics = true;
};

Json diagnostics_json(const DecodeDiagnostics& d) {
  Json j;
  j["repaired"] = d.repaired;
  j["dropped_output_tokens"] = d.dropped_output_tokens;
  j["unmatched_source_tokens"] = d.unmatched_source_tokens;
  j["malformed_groups"] = d.malformed_groups;
  j["notes"] = d.notes;
  return j;
}

int cmd_decode(const DecodeOptions& o) {
  const CodecConfig cfg = codec_config(o.codec);
  const auto [map, complete] = make_labelmap(o.labels);
  if (!complete) {
    throw Error(ErrorCode::InvalidArgument,
                "decoding natural labels needs --labelmap, --table or --labels "
                "(or --original)");
  }
  InputFile in(o.io.input);
  OutputFile out(o.io.output);
  JsonlReader reader(in.get());

  struct Pending {
    TaggedSentence meta;
    std::string text;
    std::size_t line;
  };
  std::vector<Pending> chunk;
  std::size_t failures = 0;

  auto flush = [&] {
    std::vector<std::string> texts;
    std::vector<std::vector<std::string>> sources;
    for (auto& p : chunk) {
      texts.push_back(p.text);
      sources.push_back(p.meta.tokens);
    }
    if (o.tolerant) {
      const auto decoded = batch::decode_tolerant_all(texts, sources, map, cfg);
      for (std::size_t i = 0; i < chunk.size(); ++i) {
        TaggedSentence s = materialize(sources[i], decoded[i].spans, decoded[i].sentence_class);
        s.domain = chunk[i].meta.domain;
        s.task = chunk[i].meta.task;
        Json rec = to_record(s);
        if (o.diagnostics) rec["diagnostics"] = diagnostics_json(decoded[i].diagnostics);
        out.get() << rec.dump() << '\n';
      }
    } else {
      const auto decoded = batch::try_decode_strict_all(texts, sources, map, cfg);
      for (std::size_t i = 0; i < chunk.size(); ++i) {
        if (const auto* e = std::get_if<Error>(&decoded[i])) {
          report(*e, chunk[i].line);
          ++failures;
          continue;
        }
        const Decoded& d = std::get<Decoded>(decoded[i]);
        TaggedSentence s = materialize(sources[i], d.spans, d.sentence_class);
        s.domain = chunk[i].meta.domain;
        s.task = chunk[i].meta.task;
        out.get() << to_record(s).dump() << '\n';
      }
    }
    chunk.clear();
  };

  Json j;
  while (reader.next(j)) {
    const std::size_t line = reader.line();
    if (!j.is_object() || !j.contains("tokens") || !j.contains("text") ||
        !j["text"].is_string()) {
      report(Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                              ": record needs 'tokens' and a string 'text'",
                   line),
             line);
      ++failures;
      continue;
    }
    Json meta = j;
    if (!meta.contains("tags") || (meta["tags"].size() != meta["tokens"].size())) {
      meta["tags"] = std::vector<std::string>(meta["tokens"].size(), "O");
    }
    try {
      chunk.push_back(Pending{from_record(meta, line), j["text"].get<std::string>(), line});
    } catch (const Error& e) {
      report(e, line);
      ++failures;
    }
    if (chunk.size() == kChunk) flush();
  }
  flush();
  out.finish();
  if (failures) throw Reported{};
  return 0;
}

// ---------------------------------------------------------------- corrupt

struct CorruptOptions {
  IoOptions io;
  CodecOptions codec;
  CorruptionSpec spec;
  std::optional<double> all;
  bool plain = false;
};

int cmd_corrupt(CorruptOptions o) {
  const CodecConfig cfg = codec_config(o.codec);
  if (o.all) {
    o.spec.p_token_drop = o.spec.p_token_insert = o.spec.p_label_swap = o.spec.p_truncate = *o.all;
  }
  validate_spec(o.spec);
  InputFile in(o.io.input);
  OutputFile out(o.io.output);

  std::vector<Json> records;
  std::vector<std::string> texts;
  std::uint64_t index = 0;
  auto flush = [&] {
    const auto noisy = batch::corrupt_all(texts, o.spec, index, cfg);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (o.plain) {
        out.get() << noisy[i] << '\n';
      } else {
        records[i]["text"] = noisy[i];
        out.get() << records[i].dump() << '\n';
      }
    }
    index += texts.size();
    records.clear();
    texts.clear();
  };

  if (o.plain) {
    std::string line;
    while (std::getline(in.get(), line)) {
      texts.push_back(line);
      if (texts.size() == kChunk) flush();
    }
  } else {
    JsonlReader reader(in.get());
    Json j;
    while (reader.next(j)) {
      if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(reader.line()) + ": record has no string 'text'",
                    reader.line());
      }
      texts.push_back(j["text"].get<std::string>());
      records.push_back(std::move(j));
      if (texts.size() == kChunk) flush();
    }
  }
  flush();
  out.finish();
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  std::string gold;
  std::string pred;
  std::string output = "-";
  std::string format = "jsonl";
  std::string sep = "tab";
  bool json = false;
};

int cmd_eval(const EvalOptions& o) {
  if (o.gold == "-" && o.pred == "-") {
    throw Error(ErrorCode::InvalidArgument, "--gold and --pred cannot both be stdin");
  }
  IoOptions io;
  io.format = o.format;
  io.sep = o.sep;
  InputFile gin(o.gold);
  InputFile pin(o.pred);
  const auto gold = CorpusSource(gin.get(), io).read_all();
  const auto pred = CorpusSource(pin.get(), io).read_all();
  const EvalReport r = batch::score(gold, pred);
  OutputFile out(o.output);
  if (o.json) {
    out.get() << report_to_json(r) << '\n';
  } else {
    out.get() << report_to_table(r);
  }
  out.finish();
  return 0;
}

// ---------------------------------------------------------------- episodes

struct EpisodeOptions {
  IoOptions io;
  std::size_t k = 5;
  std::size_t count = 100;
  std::size_t query = 20;
  std::uint64_t seed = 0;
  std::string domain;
  bool verify = false;
};

Json episode_json(const Episode& ep) {
  Json j;
  j["domain"] = ep.domain;
  j["k"] = ep.k;
  j["seed"] = ep.seed;
  j["inventory"] = ep.inventory;
  j["support_index"] = ep.support_index;
  j["query_index"] = ep.query_index;
  Json support = Json::array(), query = Json::array();
  for (const auto& s : ep.support) support.push_back(to_record(s));
  for (const auto& s : ep.query) query.push_back(to_record(s));
  j["support"] = std::move(support);
  j["query"] = std::move(query);
  return j;
}

int verify_bundles(const EpisodeOptions& o) {
  InputFile in(o.io.input);
  OutputFile out(o.io.output);
  JsonlReader reader(in.get());
  Json j;
  std::size_t failures = 0, n = 0;
  while (reader.next(j)) {
    const std::size_t line = reader.line();
    try {
      if (!j.is_object() || !j.contains("support") || !j.contains("inventory") ||
          !j.contains("k")) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                               ": not an episode bundle",
                    line);
      }
      std::vector<TaggedSentence> support;
      for (const auto& r : j["support"]) support.push_back(from_record(r, line));
      const auto inv = j["inventory"].get<std::set<std::string>>();
      const KShotCheck check = verify_kshot(support, inv, j["k"].get<std::size_t>());
      out.get() << "episode " << n << (check.ok ? ": ok" : ": FAIL " + check.reason) << '\n';
      if (!check.ok) ++failures;
    } catch (const Error& e) {
      report(e, line);
      ++failures;
    } catch (const nlohmann::ordered_json::exception& e) {
      report(Error(ErrorCode::ParseError, e.what(), line), line);
      ++failures;
    }
    ++n;
  }
  out.finish();
  if (failures) throw Reported{};
  return 0;
}

int cmd_episodes(const EpisodeOptions& o) {
  if (o.verify) return verify_bundles(o);
  InputFile in(o.io.input);
  std::vector<TaggedSentence> sentences = CorpusSource(in.get(), o.io).read_all();
  Corpus corpus;
  corpus.domain = o.domain.empty() ? "all" : o.domain;
  for (auto& s : sentences) {
    if (o.domain.empty() || s.domain == o.domain) corpus.sentences.push_back(std::move(s));
  }
  const auto inv = corpus.label_inventory();
  const auto episodes = sample_episodes(corpus, o.k, o.query, o.count, o.seed);
  OutputFile out(o.io.output);
  for (const auto& ep : episodes) {
    const KShotCheck check = verify_kshot(ep.support, inv, ep.k);
    if (!check.ok) {
      throw Error(ErrorCode::InvalidArgument, "sampled episode failed self-check: " + check.reason);
    }
    out.get() << episode_json(ep).dump() << '\n';
  }
  out.finish();
  return 0;
}

// ---------------------------------------------------------------- split / subsample

struct SplitOptions {
  IoOptions io;
  std::string target;
  std::string source_out;
  std::string target_out;
};

int cmd_split(const SplitOptions& o) {
  InputFile in(o.io.input);
  const auto sentences = CorpusSource(in.get(), o.io).read_all();
  const auto corpora = group_by_domain(sentences);
  const DomainSplit split = leave_one_out(corpora, o.target);
  OutputFile src(o.source_out);
  for (const auto& c : split.source) write_corpus(src.get(), c.sentences, o.io);
  src.finish();
  OutputFile tgt(o.target_out);
  write_corpus(tgt.get(), split.target.sentences, o.io);
  tgt.finish();
  std::cerr << "augtag: " << split.source.size() << " source domains, target '"
            << o.target << "' with " << split.target.size() << " sentences\n";
  return 0;
}

struct SubsampleOptions {
  IoOptions io;
  double fraction = 1.0;
  std::uint64_t seed = 0;
};

int cmd_subsample(const SubsampleOptions& o) {
  InputFile in(o.io.input);
  Corpus corpus;
  corpus.sentences = CorpusSource(in.get(), o.io).read_all();
  const std::size_t types = corpus.label_inventory().size();
  const Corpus small = subsample(corpus, o.fraction, o.seed);
  OutputFile out(o.io.output);
  write_corpus(out.get(), small.sentences, o.io);
  out.finish();
  std::cerr << "augtag: kept " << small.size() << " of " << corpus.size()
            << " sentences, " << sentences_per_type(small.size(), types)
            << " per label type\n";
  return 0;
}

// ---------------------------------------------------------------- naturalize / stats

struct NaturalizeOptions {
  IoOptions io;
  LabelOptions labels;
  std::vector<std::string> names;
};

int cmd_naturalize(const NaturalizeOptions& o) {
  std::set<std::string> labels(o.names.begin(), o.names.end());
  if (labels.empty()) labels = read_label_list(o.io.input);
  LabelOptions lo = o.labels;
  auto [map, complete] = make_labelmap(lo);
  (void)complete;
  OutputFile out(o.io.output);
  if (map.is_identity()) {
    for (const auto& l : labels) out.get() << l << '\t' << l << '\n';
  } else {
    // Rebuild so that numeric mode numbers the full sorted set.
    std::optional<LabelTable> table;
    if (!lo.labelmap.empty()) {
      InputFile in(lo.labelmap);
      table = read_label_table(in.get());
    } else if (!lo.builtin.empty()) {
      table = *tables::builtin(lo.builtin);
    }
    if (!lo.labels.empty()) {
      const auto extra = read_label_list(lo.labels);
      labels.insert(extra.begin(), extra.end());
    }
    const LabelMap full = build_labelmap(labels, table ? &*table : nullptr, map.mode());
    for (const auto& l : labels) out.get() << l << '\t' << full.natural(l) << '\n';
  }
  out.finish();
  return 0;
}

struct StatsOptions {
  IoOptions io;
  bool pretty = false;
};

int cmd_stats(const StatsOptions& o) {
  InputFile in(o.io.input);
  const auto sentences = CorpusSource(in.get(), o.io).read_all();
  const CorpusStats st = corpus_stats(sentences);
  OutputFile out(o.io.output);
  out.get() << stats_to_json(st, o.pretty ? 2 : -1) << '\n';
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossless codec between BIO tags and augmented natural-language text"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print the version and format grammar version");

  EncodeOptions enc;
  auto* c_enc = app.add_subcommand("encode", "BIO corpus -> augmented text records");
  add_io(c_enc, enc.io);
  add_labels(c_enc, enc.labels);
  add_codec(c_enc, enc.codec);
  c_enc->add_option("--task", enc.task, "Task descriptor prefix, e.g. SNIPS");
  c_enc->add_option("--emit-labelmap", enc.emit_labelmap, "Write the label map used");
  c_enc->add_flag("--text-only", enc.text_only, "Print only the augmented lines");

  DecodeOptions dec;
  auto* c_dec = app.add_subcommand("decode", "Augmented text records -> BIO records");
  add_io(c_dec, dec.io, false);
  add_labels(c_dec, dec.labels);
  add_codec(c_dec, dec.codec);
  auto* f_strict = c_dec->add_flag("--strict", dec.strict, "Reject malformed text (default)");
  auto* f_tol = c_dec->add_flag("--tolerant", dec.tolerant, "Recover from malformed text");
  f_strict->excludes(f_tol);
  c_dec->add_flag("!--no-diagnostics", dec.diagnostics, "Omit tolerant diagnostics");

  CorruptOptions cor;
  auto* c_cor = app.add_subcommand("corrupt", "Simulate generation faults in augmented text");
  add_io(c_cor, cor.io, false);
  add_codec(c_cor, cor.codec);
  c_cor->add_option("--p-drop", cor.spec.p_token_drop);
  c_cor->add_option("--p-insert", cor.spec.p_token_insert);
  c_cor->add_option("--p-swap", cor.spec.p_label_swap);
  c_cor->add_option("--p-truncate", cor.spec.p_truncate);
  c_cor->add_option("--p", cor.all, "Set all four probabilities");
  c_cor->add_option("--seed", cor.spec.seed);
  c_cor->add_flag("--plain", cor.plain, "Input is one augmented text per line");

  EvalOptions ev;
  auto* c_ev = app.add_subcommand("eval", "Chunk F1 and intent accuracy");
  c_ev->add_option("--gold", ev.gold)->required();
  c_ev->add_option("--pred", ev.pred)->required();
  c_ev->add_option("-o,--output", ev.output);
  c_ev->add_option("--format", ev.format)->check(CLI::IsMember({"jsonl", "conll"}));
  c_ev->add_option("--sep", ev.sep)->check(CLI::IsMember({"tab", "space"}));
  c_ev->add_flag("--json", ev.json, "Emit the report as JSON");

  EpisodeOptions ep;
  auto* c_ep = app.add_subcommand("episodes", "Sample or verify K-shot episodes");
  add_io(c_ep, ep.io);
  c_ep->add_option("--k", ep.k);
  c_ep->add_option("--n", ep.count, "Number of episodes");
  c_ep->add_option("--query", ep.query, "Query sentences per episode");
  c_ep->add_option("--seed", ep.seed);
  c_ep->add_option("--domain", ep.domain, "Only use sentences of this domain");
  c_ep->add_flag("--verify", ep.verify, "Input is an episode bundle; check every episode");

  SplitOptions sp;
  auto* c_sp = app.add_subcommand("split", "Leave-one-domain-out split");
  add_io(c_sp, sp.io);
  c_sp->add_option("--target", sp.target)->required();
  c_sp->add_option("--source-out", sp.source_out)->required();
  c_sp->add_option("--target-out", sp.target_out)->required();

  SubsampleOptions ss;
  auto* c_ss = app.add_subcommand("subsample", "Low-resource subset");
  add_io(c_ss, ss.io);
  c_ss->add_option("--fraction", ss.fraction)->required();
  c_ss->add_option("--seed", ss.seed);

  NaturalizeOptions na;
  auto* c_na = app.add_subcommand("naturalize", "Print raw<TAB>natural label pairs");
  add_io(c_na, na.io, false);
  add_labels(c_na, na.labels);
  c_na->add_option("names", na.names, "Raw labels (otherwise read from input)");

  StatsOptions st;
  auto* c_st = app.add_subcommand("stats", "Corpus statistics as JSON");
  add_io(c_st, st.io);
  c_st->add_flag("--pretty", st.pretty);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (version) {
    std::cout << "augtag " << kVersion << "\nformat grammar " << kFormatGrammarVersion << '\n';
    return 0;
  }
  try {
    if (*c_enc) return cmd_encode(enc);
    if (*c_dec) return cmd_decode(dec);
    if (*c_cor) return cmd_corrupt(cor);
    if (*c_ev) return cmd_eval(ev);
    if (*c_ep) return cmd_episodes(ep);
    if (*c_sp) return cmd_split(sp);
    if (*c_ss) return cmd_subsample(ss);
    if (*c_na) return cmd_naturalize(na);
    if (*c_st) return cmd_stats(st);
    std::cout << app.help();
    return 1;
  } catch (const Reported&) {
    return 1;
  } catch (const Error& e) {
    std::cerr << "augtag: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? 2 : 1;
  } catch (const nlohmann::ordered_json::exception& e) {
    std::cerr << "augtag: " << e.what() << '\n';
    return 1;
  }
}
