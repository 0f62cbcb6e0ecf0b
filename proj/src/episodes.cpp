#include "augtag/episodes.hpp"

#include <algorithm>
#include <cmath>

#include "augtag/error.hpp"
#include "augtag/random.hpp"

namespace augtag {

std::map<std::string, std::size_t> chunk_label_counts(const TaggedSentence& s) {
  std::map<std::string, std::size_t> counts;
  for (const Span& span : tags_to_spans(s.tags, Scheme::Lenient)) ++counts[span.label];
  return counts;
}

std::set<std::string> Corpus::label_inventory() const {
  std::set<std::string> labels;
  for (const auto& s : sentences) {
    for (const Span& span : tags_to_spans(s.tags, Scheme::Lenient)) labels.insert(span.label);
  }
  return labels;
}

Episode sample_episode(const Corpus& corpus, std::size_t k,
                       std::size_t query_size, std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const std::size_t n = corpus.size();

  std::vector<std::map<std::string, std::size_t>> per_sentence(n);
  std::map<std::string, std::size_t> available;
  for (std::size_t i = 0; i < n; ++i) {
    per_sentence[i] = chunk_label_counts(corpus.sentences[i]);
    for (const auto& [label, c] : per_sentence[i]) available[label] += c;
  }
  for (const auto& [label, c] : available) {
    if (c < k) {
      throw Error(ErrorCode::InsufficientCorpus,
                  "label '" + label + "' has " + std::to_string(c) +
                      " chunks, need " + std::to_string(k));
    }
  }

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  std::map<std::string, std::size_t> have;
  for (const auto& entry : available) have[entry.first] = 0;
  std::size_t deficient = available.size();
  std::vector<std::size_t> support;
  for (std::size_t idx : order) {
    if (deficient == 0) break;
    bool helps = false;
    for (const auto& [label, c] : per_sentence[idx]) {
      if (have[label] < k) helps = true;
    }
    if (!helps) continue;
    support.push_back(idx);
    for (const auto& [label, c] : per_sentence[idx]) {
      const std::size_t before = have[label];
      have[label] += c;
      if (before < k && have[label] >= k) --deficient;
    }
  }

  // A sentence kept here stays unremovable: later removals only lower counts.
  std::vector<std::size_t> kept;
  for (std::size_t idx : support) {
    bool removable = true;
    for (const auto& [label, c] : per_sentence[idx]) {
      if (have[label] - c < k) {
        removable = false;
        break;
      }
    }
    if (removable) {
      for (const auto& [label, c] : per_sentence[idx]) have[label] -= c;
    } else {
      kept.push_back(idx);
    }
  }
  std::sort(kept.begin(), kept.end());

  std::vector<bool> in_support(n, false);
  for (std::size_t idx : kept) in_support[idx] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_support[i]) rest.push_back(i);
  }
  if (rest.size() < query_size) {
    throw Error(ErrorCode::InsufficientCorpus,
                "query set needs " + std::to_string(query_size) +
                    " sentences, only " + std::to_string(rest.size()) +
                    " remain after the support set");
  }
  for (std::size_t i = 0; i < query_size; ++i) {
    std::swap(rest[i], rest[i + rng.below(rest.size() - i)]);
  }
  rest.resize(query_size);
  std::sort(rest.begin(), rest.end());

  Episode ep;
  ep.k = k;
  ep.seed = seed;
  ep.domain = corpus.domain;
  for (const auto& entry : available) ep.inventory.push_back(entry.first);
  ep.support_index = std::move(kept);
  ep.query_index = std::move(rest);
  for (std::size_t idx : ep.support_index) ep.support.push_back(corpus.sentences[idx]);
  for (std::size_t idx : ep.query_index) ep.query.push_back(corpus.sentences[idx]);
  return ep;
}

std::vector<Episode> sample_episodes(const Corpus& corpus, std::size_t k,
                                     std::size_t query_size, std::size_t count,
                                     std::uint64_t seed) {
  std::vector<Episode> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(sample_episode(corpus, k, query_size, mix_seed(seed, i)));
  }
  return out;
}

KShotCheck verify_kshot(std::span<const TaggedSentence> support,
                        const std::set<std::string>& inventory, std::size_t k) {
  KShotCheck check;
  std::vector<std::map<std::string, std::size_t>> per(support.size());
  std::map<std::string, std::size_t> total;
  for (const auto& label : inventory) total[label] = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (const auto& [label, c] : chunk_label_counts(support[i])) {
      if (!inventory.count(label)) continue;
      per[i][label] = c;
      total[label] += c;
    }
  }
  for (const auto& [label, c] : total) {
    if (c < k) {
      check.ok = false;
      check.label = label;
      check.reason = "label '" + label + "' occurs " + std::to_string(c) +
                     " times, fewer than k=" + std::to_string(k);
      return check;
    }
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    bool still_covered = true;
    for (const auto& [label, c] : total) {
      auto it = per[i].find(label);
      const std::size_t without = c - (it == per[i].end() ? 0 : it->second);
      if (without < k) {
        still_covered = false;
        break;
      }
    }
    if (still_covered) {
      check.ok = false;
      check.removable = i;
      check.reason = "support sentence " + std::to_string(i) +
                     " can be removed without breaking k=" + std::to_string(k);
      return check;
    }
  }
  return check;
}

DomainSplit leave_one_out(std::span<const Corpus> corpora,
                          const std::string& target) {
  DomainSplit split;
  bool found = false;
  for (const Corpus& c : corpora) {
    if (c.domain == target && !found) {
      split.target = c;
      found = true;
    } else {
      split.source.push_back(c);
    }
  }
  if (!found) throw Error(ErrorCode::UnknownDomain, "no domain '" + target + "'");
  return split;
}

std::size_t subsample_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fraction must lie in (0, 1]");
  }
  if (n == 0) return 0;
  // The epsilon keeps exact products such as 0.01 * 100 from flooring down.
  const auto count =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  return std::clamp<std::size_t>(count, 1, n);
}

Corpus subsample(const Corpus& corpus, double fraction, std::uint64_t seed) {
  const std::size_t n = corpus.size();
  const std::size_t count = subsample_count(n, fraction);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  Corpus out;
  out.domain = corpus.domain;
  for (std::size_t i : idx) out.sentences.push_back(corpus.sentences[i]);
  return out;
}

double sentences_per_type(std::size_t sentences, std::size_t label_types) {
  return label_types == 0 ? 0.0
                          : static_cast<double>(sentences) /
                                static_cast<double>(label_types);
}

std::vector<Corpus> group_by_domain(std::span<const TaggedSentence> sentences,
                                    const std::string& fallback) {
  std::vector<Corpus> out;
  std::map<std::string, std::size_t> where;
  for (const auto& s : sentences) {
    const std::string& d = s.domain ? *s.domain : fallback;
    auto [it, inserted] = where.emplace(d, out.size());
    if (inserted) out.push_back(Corpus{d, {}});
    out[it->second].sentences.push_back(s);
  }
  return out;
}

}  // namespace augtag
