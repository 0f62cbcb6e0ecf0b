#include "doctest.h"

#include "augtag/batch.hpp"
#include "support/generators.hpp"

using namespace augtag;

namespace {

struct Fixture {
  std::vector<TaggedSentence> sentences;
  std::vector<std::vector<std::string>> sources;
  LabelMap map;

  explicit Fixture(std::size_t n) {
    std::set<std::string> labels(tables::snips_slots().begin(), tables::snips_slots().end());
    labels.insert(tables::snips_intents().begin(), tables::snips_intents().end());
    map = build_labelmap(labels, nullptr, LabelMode::Rules);
    Rng rng(123);
    for (std::size_t i = 0; i < n; ++i) {
      sentences.push_back(
          testing::random_sentence(rng, tables::snips_slots(), tables::snips_intents()));
      sources.push_back(sentences.back().tokens);
    }
  }
};

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  const Fixture f(2000);
  const CodecConfig cfg;
  const auto serial = batch::encode_all(f.sentences, f.map, cfg, batch::Exec::Serial);
  const auto parallel = batch::encode_all(f.sentences, f.map, cfg, batch::Exec::Parallel);
  REQUIRE(serial == parallel);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i] == encode(f.sentences[i], f.map, cfg));
  }

  const CorruptionSpec spec{0.1, 0.1, 0.1, 0.1, 77};
  const auto cs = batch::corrupt_all(serial, spec, 0, cfg, batch::Exec::Serial);
  const auto cp = batch::corrupt_all(serial, spec, 0, cfg, batch::Exec::Parallel);
  REQUIRE(cs == cp);

  // Chunked processing with running offsets equals one pass.
  std::vector<std::string> chunked;
  for (std::size_t start = 0; start < serial.size(); start += 300) {
    const std::size_t len = std::min<std::size_t>(300, serial.size() - start);
    auto part = batch::corrupt_all(std::span(serial).subspan(start, len), spec, start, cfg);
    chunked.insert(chunked.end(), part.begin(), part.end());
  }
  REQUIRE(chunked == cs);

  const auto ds = batch::decode_tolerant_all(cs, f.sources, f.map, cfg, batch::Exec::Serial);
  const auto dp = batch::decode_tolerant_all(cs, f.sources, f.map, cfg, batch::Exec::Parallel);
  REQUIRE(ds.size() == dp.size());
  std::vector<TaggedSentence> pred;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    REQUIRE(ds[i].spans == dp[i].spans);
    REQUIRE(ds[i].sentence_class == dp[i].sentence_class);
    REQUIRE(ds[i].diagnostics.notes == dp[i].diagnostics.notes);
    pred.push_back(materialize(f.sources[i], ds[i].spans, ds[i].sentence_class));
  }

  const EvalReport ss = batch::score(f.sentences, pred, batch::Exec::Serial);
  const EvalReport sp = batch::score(f.sentences, pred, batch::Exec::Parallel);
  const EvalReport ref = score(f.sentences, pred);
  CHECK(ss.totals == ref.totals);
  CHECK(sp.totals == ref.totals);
  CHECK(sp.per_label == ref.per_label);
  CHECK(sp.intent_correct == ref.intent_correct);
  CHECK(sp.f1 == ref.f1);
}

TEST_CASE("strict batch decode reports per-item errors") {
  const Fixture f(50);
  auto texts = batch::encode_all(f.sentences, f.map, {});
  texts[7] = "garbage";
  texts[30] = "[ unbalanced";
  const auto out = batch::try_decode_strict_all(texts, f.sources, f.map, {});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool failed = std::holds_alternative<Error>(out[i]);
    CHECK(failed == (i == 7 || i == 30));
  }
}

TEST_CASE("first failing item wins in throwing kernels") {
  Fixture f(200);
  f.sentences[150].tags[0] = "bogus";
  f.sentences[40].tags[0] = "also-bogus";
  try {
    batch::encode_all(f.sentences, f.map, {}, batch::Exec::Parallel);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("also-bogus") != std::string::npos);
  }
  CHECK(batch::max_threads() >= 1);
}
