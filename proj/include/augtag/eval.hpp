#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "augtag/core.hpp"

namespace augtag {

struct ChunkCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ChunkCounts& operator+=(const ChunkCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ChunkCounts&) const = default;

  double precision() const;
  double recall() const;
  // 2tp / (2tp + fp + fn), which equals 2PR/(P+R); 0 when undefined.
  double f1() const;
};

struct EvalReport {
  ChunkCounts totals;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::map<std::string, ChunkCounts> per_label;
  std::optional<double> intent_accuracy;
  std::size_t intent_correct = 0;
  std::size_t intent_total = 0;
  std::size_t n_sentences = 0;
};

// Chunk counts of one sentence pair. Both tag lists are chunked leniently;
// a predicted chunk is a true positive iff (start, end, label) all match.
ChunkCounts count_chunks(std::span<const std::string> gold,
                         std::span<const std::string> pred,
                         std::map<std::string, ChunkCounts>* per_label = nullptr);

// Micro-averaged precision/recall/F1 and intent accuracy over gold
// sentences that carry a class. Throws Error(LengthMismatch).
EvalReport score(std::span<const TaggedSentence> gold,
                 std::span<const TaggedSentence> pred);

// Recomputes the derived ratios from `totals` and the intent counters.
void finalize(EvalReport& report);

struct Episode;

// Scores predictions for the query set of one episode.
EvalReport score_episode(const Episode& episode,
                         std::span<const TaggedSentence> predictions);

struct EpisodeSummary {
  std::size_t n_episodes = 0;
  double mean_f1 = 0.0;
  double stdev_f1 = 0.0;  // population standard deviation
};

EpisodeSummary aggregate_episodes(std::span<const EvalReport> reports);

std::string report_to_json(const EvalReport& report, int indent = -1);
std::string summary_to_json(const EpisodeSummary& summary);
// Fixed-width table: one row per label followed by the micro row.
std::string report_to_table(const EvalReport& report);

}  // namespace augtag
