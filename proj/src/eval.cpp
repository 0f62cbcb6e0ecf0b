#include "augtag/eval.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "augtag/episodes.hpp"
#include "augtag/error.hpp"

namespace augtag {

double ChunkCounts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double ChunkCounts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double ChunkCounts::f1() const {
  const std::size_t denom = 2 * tp + fp + fn;
  return tp == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

ChunkCounts count_chunks(std::span<const std::string> gold,
                         std::span<const std::string> pred,
                         std::map<std::string, ChunkCounts>* per_label) {
  const SpanSet g = tags_to_spans(gold, Scheme::Lenient);
  const SpanSet p = tags_to_spans(pred, Scheme::Lenient);
  // Spans are sorted by start, so a merge finds exact matches.
  ChunkCounts counts;
  std::size_t i = 0, j = 0;
  auto bump = [&](const std::string& label, std::size_t ChunkCounts::*field) {
    if (per_label) ++((*per_label)[label].*field);
  };
  while (i < g.size() || j < p.size()) {
    if (j == p.size() || (i < g.size() && g[i] < p[j])) {
      ++counts.fn;
      bump(g[i++].label, &ChunkCounts::fn);
    } else if (i == g.size() || p[j] < g[i]) {
      ++counts.fp;
      bump(p[j++].label, &ChunkCounts::fp);
    } else {
      ++counts.tp;
      bump(g[i].label, &ChunkCounts::tp);
      ++i;
      ++j;
    }
  }
  return counts;
}

void finalize(EvalReport& report) {
  report.precision = report.totals.precision();
  report.recall = report.totals.recall();
  report.f1 = report.totals.f1();
  if (report.intent_total > 0) {
    report.intent_accuracy = static_cast<double>(report.intent_correct) /
                             static_cast<double>(report.intent_total);
  } else {
    report.intent_accuracy.reset();
  }
}

EvalReport score(std::span<const TaggedSentence> gold,
                 std::span<const TaggedSentence> pred) {
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(gold.size()) + " gold sentences but " +
                    std::to_string(pred.size()) + " predictions",
                std::min(gold.size(), pred.size()));
  }
  EvalReport report;
  report.n_sentences = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].tags.size() != pred[i].tags.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "sentence " + std::to_string(i) + ": " +
                      std::to_string(gold[i].tags.size()) + " gold tags vs " +
                      std::to_string(pred[i].tags.size()) + " predicted",
                  i);
    }
    report.totals += count_chunks(gold[i].tags, pred[i].tags, &report.per_label);
    if (gold[i].sentence_class) {
      ++report.intent_total;
      if (pred[i].sentence_class == gold[i].sentence_class) ++report.intent_correct;
    }
  }
  finalize(report);
  return report;
}

EvalReport score_episode(const Episode& episode,
                         std::span<const TaggedSentence> predictions) {
  return score(episode.query, predictions);
}

EpisodeSummary aggregate_episodes(std::span<const EvalReport> reports) {
  EpisodeSummary s;
  s.n_episodes = reports.size();
  if (reports.empty()) return s;
  double sum = 0.0;
  for (const auto& r : reports) sum += r.f1;
  s.mean_f1 = sum / static_cast<double>(reports.size());
  double sq = 0.0;
  for (const auto& r : reports) sq += (r.f1 - s.mean_f1) * (r.f1 - s.mean_f1);
  s.stdev_f1 = std::sqrt(sq / static_cast<double>(reports.size()));
  return s;
}

std::string report_to_json(const EvalReport& report, int indent) {
  nlohmann::ordered_json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["tp"] = report.totals.tp;
  j["fp"] = report.totals.fp;
  j["fn"] = report.totals.fn;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (const auto& [label, c] : report.per_label) {
    labels[label] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"f1", c.f1()}};
  }
  j["per_label"] = std::move(labels);
  if (report.intent_accuracy) {
    j["intent_accuracy"] = *report.intent_accuracy;
  } else {
    j["intent_accuracy"] = nullptr;
  }
  j["n_sentences"] = report.n_sentences;
  return j.dump(indent);
}

std::string summary_to_json(const EpisodeSummary& summary) {
  nlohmann::ordered_json j;
  j["n_episodes"] = summary.n_episodes;
  j["mean_f1"] = summary.mean_f1;
  j["stdev_f1"] = summary.stdev_f1;
  return j.dump();
}

std::string report_to_table(const EvalReport& report) {
  std::size_t width = 5;
  for (const auto& entry : report.per_label) width = std::max(width, entry.first.size());
  std::string out;
  char buf[256];
  auto row = [&](const std::string& name, const ChunkCounts& c, double p,
                 double r, double f) {
    std::snprintf(buf, sizeof buf, "%-*s %6zu %6zu %6zu %9.3f %9.3f %9.3f\n",
                  static_cast<int>(width), name.c_str(), c.tp, c.fp, c.fn, p, r, f);
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "%-*s %6s %6s %6s %9s %9s %9s\n",
                static_cast<int>(width), "label", "tp", "fp", "fn", "precision",
                "recall", "F1");
  out += buf;
  for (const auto& [label, c] : report.per_label) {
    row(label, c, c.precision(), c.recall(), c.f1());
  }
  row("micro", report.totals, report.precision, report.recall, report.f1);
  if (report.intent_accuracy) {
    std::snprintf(buf, sizeof buf, "intent accuracy %.3f (%zu/%zu)\n",
                  *report.intent_accuracy, report.intent_correct,
                  report.intent_total);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "sentences %zu\nF1 %.3f\n", report.n_sentences,
                report.f1);
  out += buf;
  return out;
}

}  // namespace augtag
