#include "augtag/batch.hpp"

#include <exception>
#include <map>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "augtag/random.hpp"

namespace augtag::batch {

namespace {

// Runs fn(i) for i in [0, n). Exceptions other than augtag::Error cannot
// cross the OpenMP region, so they are parked and the lowest-index one is
// rethrown afterwards.
template <typename T, typename Fn>
std::vector<Outcome<T>> map_indexed(std::size_t n, Exec exec, Fn fn) {
  std::vector<std::optional<Outcome<T>>> slots(n);
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::Parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx].emplace(std::in_place_index<0>, fn(idx));
    } catch (const Error& e) {
      slots[idx].emplace(std::in_place_index<1>, e);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::vector<Outcome<T>> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <typename T>
std::vector<T> unwrap(std::vector<Outcome<T>>&& outcomes) {
  std::vector<T> out;
  out.reserve(outcomes.size());
  for (auto& o : outcomes) {
    if (auto* e = std::get_if<Error>(&o)) throw *e;
    out.push_back(std::move(std::get<T>(o)));
  }
  return out;
}

void check_sizes(std::size_t texts, std::size_t sources) {
  if (texts != sources) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(texts) + " texts but " + std::to_string(sources) +
                    " source sentences");
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Outcome<std::string>> try_encode_all(
    std::span<const TaggedSentence> sentences, const LabelMap& labels,
    const CodecConfig& config, Exec exec) {
  return map_indexed<std::string>(sentences.size(), exec, [&](std::size_t i) {
    return encode(sentences[i], labels, config);
  });
}

std::vector<std::string> encode_all(std::span<const TaggedSentence> sentences,
                                    const LabelMap& labels,
                                    const CodecConfig& config, Exec exec) {
  return unwrap(try_encode_all(sentences, labels, config, exec));
}

std::vector<Outcome<Decoded>> try_decode_strict_all(
    std::span<const std::string> texts,
    std::span<const std::vector<std::string>> sources, const LabelMap& labels,
    const CodecConfig& config, Exec exec) {
  check_sizes(texts.size(), sources.size());
  return map_indexed<Decoded>(texts.size(), exec, [&](std::size_t i) {
    return decode_strict(texts[i], sources[i], labels, config);
  });
}

std::vector<TolerantDecoded> decode_tolerant_all(
    std::span<const std::string> texts,
    std::span<const std::vector<std::string>> sources, const LabelMap& labels,
    const CodecConfig& config, Exec exec) {
  check_sizes(texts.size(), sources.size());
  return unwrap(map_indexed<TolerantDecoded>(
      texts.size(), exec, [&](std::size_t i) {
        return decode_tolerant(texts[i], sources[i], labels, config);
      }));
}

std::vector<std::string> corrupt_all(std::span<const std::string> texts,
                                     const CorruptionSpec& spec,
                                     std::uint64_t first_index,
                                     const CodecConfig& config, Exec exec) {
  validate_spec(spec);
  return unwrap(map_indexed<std::string>(texts.size(), exec, [&](std::size_t i) {
    CorruptionSpec local = spec;
    local.seed = mix_seed(spec.seed, first_index + i);
    return corrupt(texts[i], local, config);
  }));
}

EvalReport score(std::span<const TaggedSentence> gold,
                 std::span<const TaggedSentence> pred, Exec exec) {
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(gold.size()) + " gold sentences but " +
                    std::to_string(pred.size()) + " predictions",
                std::min(gold.size(), pred.size()));
  }
  struct PairCounts {
    ChunkCounts counts;
    std::map<std::string, ChunkCounts> per_label;
  };
  auto pairs = unwrap(map_indexed<PairCounts>(gold.size(), exec, [&](std::size_t i) {
    if (gold[i].tags.size() != pred[i].tags.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "sentence " + std::to_string(i) + ": " +
                      std::to_string(gold[i].tags.size()) + " gold tags vs " +
                      std::to_string(pred[i].tags.size()) + " predicted",
                  i);
    }
    PairCounts pc;
    pc.counts = count_chunks(gold[i].tags, pred[i].tags, &pc.per_label);
    return pc;
  }));

  EvalReport report;
  report.n_sentences = gold.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report.totals += pairs[i].counts;
    for (const auto& [label, c] : pairs[i].per_label) report.per_label[label] += c;
    if (gold[i].sentence_class) {
      ++report.intent_total;
      if (pred[i].sentence_class == gold[i].sentence_class) ++report.intent_correct;
    }
  }
  finalize(report);
  return report;
}

}  // namespace augtag::batch
