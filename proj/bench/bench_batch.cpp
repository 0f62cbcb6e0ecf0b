// Serial reference vs OpenMP kernels on a synthetic corpus.
// Arg(0) = serial, Arg(1) = parallel.

#include <benchmark/benchmark.h>

#include "augtag/batch.hpp"
#include "augtag/naturalize.hpp"
#include "support/generators.hpp"

using namespace augtag;

namespace {

struct Fixture {
  std::vector<TaggedSentence> gold;
  std::vector<TaggedSentence> pred;
  std::vector<std::string> texts;
  std::vector<std::string> noisy;
  std::vector<std::vector<std::string>> sources;
  LabelMap map;
  CodecConfig config;

  Fixture() {
    const auto& slots = tables::snips_slots();
    std::set<std::string> labels(slots.begin(), slots.end());
    labels.insert(tables::snips_intents().begin(), tables::snips_intents().end());
    map = build_labelmap(labels, nullptr, LabelMode::Rules);
    Rng rng(1);
    std::vector<std::string> pool(slots.begin(), slots.begin() + 8);
    for (int i = 0; i < 20000; ++i) {
      gold.push_back(testing::random_sentence(rng, pool, tables::snips_intents()));
    }
    texts = batch::encode_all(gold, map, config, batch::Exec::Serial);
    noisy = batch::corrupt_all(texts, CorruptionSpec{0.1, 0.1, 0.1, 0.1, 3}, 0, config,
                               batch::Exec::Serial);
    for (const auto& s : gold) sources.push_back(s.tokens);
    const auto decoded = batch::decode_tolerant_all(noisy, sources, map, config);
    for (std::size_t i = 0; i < gold.size(); ++i) {
      pred.push_back(materialize(gold[i].tokens, decoded[i].spans, decoded[i].sentence_class));
    }
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

batch::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? batch::Exec::Parallel : batch::Exec::Serial;
}

void BM_Encode(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch::encode_all(f.gold, f.map, f.config, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * f.gold.size());
}

void BM_DecodeStrict(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        batch::try_decode_strict_all(f.texts, f.sources, f.map, f.config, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * f.texts.size());
}

void BM_DecodeTolerant(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        batch::decode_tolerant_all(f.noisy, f.sources, f.map, f.config, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * f.noisy.size());
}

void BM_Corrupt(benchmark::State& state) {
  const Fixture& f = fixture();
  const CorruptionSpec spec{0.1, 0.1, 0.1, 0.1, 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch::corrupt_all(f.texts, spec, 0, f.config, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * f.texts.size());
}

void BM_Score(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch::score(f.gold, f.pred, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * f.gold.size());
}

}  // namespace

BENCHMARK(BM_Encode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeStrict)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeTolerant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Corrupt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Score)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
