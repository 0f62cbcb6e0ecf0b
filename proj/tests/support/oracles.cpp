#include "oracles.hpp"

namespace augtag::testing {

OracleChunks brute_force_chunks(std::span<const std::string> tags) {
  const std::size_t n = tags.size();
  auto label = [&](std::size_t i) {
    return tags[i] == "O" ? std::string() : tags[i].substr(2);
  };
  auto kind = [&](std::size_t i) { return tags[i][0]; };
  auto begins = [&](std::size_t i) {
    if (tags[i] == "O") return false;
    if (kind(i) == 'B') return true;
    return i == 0 || tags[i - 1] == "O" || label(i - 1) != label(i);
  };
  OracleChunks r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!begins(i)) continue;
    if (kind(i) == 'I' && !r.first_orphan) r.first_orphan = i;
    for (std::size_t j = i; j < n; ++j) {
      bool inner = true;
      for (std::size_t t = i + 1; t <= j; ++t) {
        if (tags[t] == "O" || kind(t) != 'I' || label(t) != label(i)) inner = false;
      }
      if (!inner) break;
      const bool ends = j + 1 == n || tags[j + 1] == "O" || kind(j + 1) == 'B' ||
                        label(j + 1) != label(i);
      if (ends) r.spans.push_back(Span{i, j, label(i)});
    }
  }
  return r;
}

OracleCounts brute_force_score(std::span<const std::vector<std::string>> gold,
                               std::span<const std::vector<std::string>> pred) {
  OracleCounts c;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const SpanSet g = brute_force_chunks(gold[s]).spans;
    const SpanSet p = brute_force_chunks(pred[s]).spans;
    std::size_t tp = 0;
    for (const Span& a : g) {
      for (const Span& b : p) {
        if (a.start == b.start && a.end == b.end && a.label == b.label) ++tp;
      }
    }
    c.tp += tp;
    c.fp += p.size() - tp;
    c.fn += g.size() - tp;
  }
  return c;
}

bool exhaustive_kshot(std::span<const std::vector<std::string>> support_tags,
                      const std::set<std::string>& inventory, std::size_t k) {
  auto covered = [&](std::optional<std::size_t> skip) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < support_tags.size(); ++i) {
      if (skip && *skip == i) continue;
      for (const Span& s : brute_force_chunks(support_tags[i]).spans) ++counts[s.label];
    }
    for (const auto& label : inventory) {
      if (counts[label] < k) return false;
    }
    return true;
  };
  if (!covered(std::nullopt)) return false;
  for (std::size_t i = 0; i < support_tags.size(); ++i) {
    if (covered(i)) return false;
  }
  return true;
}

}  // namespace augtag::testing
