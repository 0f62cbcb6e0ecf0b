#pragma once

// Corpus-level kernels. Each has a serial reference path and an OpenMP path;
// both produce identical, input-ordered results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "augtag/codec.hpp"
#include "augtag/error.hpp"
#include "augtag/eval.hpp"
#include "augtag/ingest.hpp"

namespace augtag::batch {

enum class Exec { Serial, Parallel };

int max_threads();

template <typename T>
using Outcome = std::variant<T, Error>;

std::vector<Outcome<std::string>> try_encode_all(
    std::span<const TaggedSentence> sentences, const LabelMap& labels,
    const CodecConfig& config, Exec exec = Exec::Parallel);

// Throws the error of the first failing sentence.
std::vector<std::string> encode_all(std::span<const TaggedSentence> sentences,
                                    const LabelMap& labels,
                                    const CodecConfig& config,
                                    Exec exec = Exec::Parallel);

std::vector<Outcome<Decoded>> try_decode_strict_all(
    std::span<const std::string> texts,
    std::span<const std::vector<std::string>> sources, const LabelMap& labels,
    const CodecConfig& config, Exec exec = Exec::Parallel);

std::vector<TolerantDecoded> decode_tolerant_all(
    std::span<const std::string> texts,
    std::span<const std::vector<std::string>> sources, const LabelMap& labels,
    const CodecConfig& config, Exec exec = Exec::Parallel);

// Item i is corrupted with seed mix_seed(spec.seed, first_index + i), so a
// stream processed in chunks matches one processed whole.
std::vector<std::string> corrupt_all(std::span<const std::string> texts,
                                     const CorruptionSpec& spec,
                                     std::uint64_t first_index,
                                     const CodecConfig& config,
                                     Exec exec = Exec::Parallel);

// Same contract as augtag::score; sentence pairs are counted in parallel and
// reduced in input order.
EvalReport score(std::span<const TaggedSentence> gold,
                 std::span<const TaggedSentence> pred,
                 Exec exec = Exec::Parallel);

}  // namespace augtag::batch
