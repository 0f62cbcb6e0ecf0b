#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "augtag/core.hpp"

namespace augtag {

struct Corpus {
  std::string domain;
  std::vector<TaggedSentence> sentences;

  std::size_t size() const noexcept { return sentences.size(); }
  // Union of chunk labels over all sentences.
  std::set<std::string> label_inventory() const;
};

// Chunk occurrences per label; two money chunks in one sentence count twice.
std::map<std::string, std::size_t> chunk_label_counts(const TaggedSentence& s);

struct Episode {
  std::vector<TaggedSentence> support;
  std::vector<TaggedSentence> query;
  // Corpus positions of the support and query sentences.
  std::vector<std::size_t> support_index;
  std::vector<std::size_t> query_index;
  std::vector<std::string> inventory;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string domain;

  bool operator==(const Episode&) const = default;
};

// Support set in which every inventory label has >= k chunks and no sentence
// can be removed without pushing some label below k. Greedy add over a
// seeded shuffle, then a prune pass in the same order. The query set is
// `query_size` sentences drawn uniformly from the rest, in corpus order.
// Throws Error(InsufficientCorpus).
Episode sample_episode(const Corpus& corpus, std::size_t k,
                       std::size_t query_size, std::uint64_t seed);

// Episode i uses seed mix_seed(seed, i).
std::vector<Episode> sample_episodes(const Corpus& corpus, std::size_t k,
                                     std::size_t query_size, std::size_t count,
                                     std::uint64_t seed);

struct KShotCheck {
  bool ok = true;
  std::optional<std::string> label;       // label below k
  std::optional<std::size_t> removable;   // support index that can be dropped
  std::string reason;
};

// Exhaustive check of the K-shot definition: coverage of every inventory
// label, then minimality by trying to remove each sentence in turn.
KShotCheck verify_kshot(std::span<const TaggedSentence> support,
                        const std::set<std::string>& inventory, std::size_t k);

struct DomainSplit {
  std::vector<Corpus> source;
  Corpus target;
};

// Throws Error(UnknownDomain).
DomainSplit leave_one_out(std::span<const Corpus> corpora,
                          const std::string& target);

// max(1, floor(fraction * N)) sentences drawn without replacement, kept in
// corpus order. fraction must lie in (0, 1].
Corpus subsample(const Corpus& corpus, double fraction, std::uint64_t seed);

std::size_t subsample_count(std::size_t n, double fraction);

// Sentences per label type, the density figure reported for low-resource
// subsets.
double sentences_per_type(std::size_t sentences, std::size_t label_types);

// Groups sentences by their domain field, in first-seen order. Sentences
// without a domain go to `fallback`.
std::vector<Corpus> group_by_domain(std::span<const TaggedSentence> sentences,
                                    const std::string& fallback = "default");

}  // namespace augtag
