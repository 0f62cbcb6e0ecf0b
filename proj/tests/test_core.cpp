#include "doctest.h"

#include <optional>

#include "augtag/core.hpp"
#include "augtag/error.hpp"
#include "augtag/random.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace augtag;

using Tags = std::vector<std::string>;
using testing::brute_force_chunks;
using OracleResult = testing::OracleChunks;

TEST_CASE("tags_to_spans on reference sequences") {
  CHECK(tags_to_spans(Tags{"O", "O", "B-GPE", "I-GPE", "I-GPE", "O"}) ==
        SpanSet{{2, 4, "GPE"}});
  CHECK(tags_to_spans(Tags{"O", "O", "O"}).empty());
  CHECK(tags_to_spans(Tags{"O", "I-PER"}, Scheme::Lenient) == SpanSet{{1, 1, "PER"}});
  try {
    tags_to_spans(Tags{"O", "I-PER"}, Scheme::Strict);
    FAIL("strict mode accepted an orphan I-");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedScheme);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("lenient repair of label switches inside a chunk") {
  CHECK(tags_to_spans(Tags{"B-A", "I-B", "I-B"}) ==
        SpanSet{{0, 0, "A"}, {1, 2, "B"}});
  CHECK(tags_to_spans(Tags{"B-A", "B-A"}) == SpanSet{{0, 0, "A"}, {1, 1, "A"}});
}

TEST_CASE("BIOES input is chunked through the B/I mapping") {
  CHECK(tags_to_spans(Tags{"S-X", "B-Y", "I-Y", "E-Y", "O", "S-X", "S-X"}, Scheme::Strict) ==
        SpanSet{{0, 0, "X"}, {1, 3, "Y"}, {5, 5, "X"}, {6, 6, "X"}});
}

TEST_CASE("labels may contain spaces and hyphens") {
  CHECK(tags_to_spans(Tags{"B-playlist owner", "I-playlist owner"}) ==
        SpanSet{{0, 1, "playlist owner"}});
  CHECK(tags_to_spans(Tags{"B-a-b"}) == SpanSet{{0, 0, "a-b"}});
}

TEST_CASE("invalid tags are rejected") {
  for (const char* bad : {"B-", "X-PER", "b-PER", "", "OO", "BPER"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(tags_to_spans(Tags{"O", bad}), Error);
  }
}

TEST_CASE("chunker agrees with brute force on all 3-tag sequences") {
  const Tags alphabet = {"O", "B-A", "I-A", "B-B", "I-B"};
  std::size_t cases = 0;
  for (const auto& a : alphabet)
    for (const auto& b : alphabet)
      for (const auto& c : alphabet) {
        const Tags tags = {a, b, c};
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        const OracleResult oracle = brute_force_chunks(tags);
        CHECK(tags_to_spans(tags, Scheme::Lenient) == oracle.spans);
        if (oracle.first_orphan) {
          try {
            tags_to_spans(tags, Scheme::Strict);
            FAIL("strict accepted");
          } catch (const Error& e) {
            CHECK(e.index() == oracle.first_orphan);
          }
        } else {
          CHECK(tags_to_spans(tags, Scheme::Strict) == oracle.spans);
        }
        ++cases;
      }
  CHECK(cases == 125);
}

TEST_CASE("spans_to_tags") {
  const SpanSet spans = {{1, 1, "playlist owner"}, {2, 5, "playlist"}};
  CHECK(spans_to_tags(spans, 6) ==
        Tags{"O", "B-playlist owner", "B-playlist", "I-playlist", "I-playlist",
             "I-playlist"});
  CHECK(spans_to_tags({}, 4) == Tags{"O", "O", "O", "O"});

  try {
    spans_to_tags({{0, 0, "A"}, {0, 1, "B"}}, 3);
    FAIL("overlap accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlapError);
  }
  try {
    spans_to_tags({{2, 3, "A"}}, 3);
    FAIL("out of bounds accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfBounds);
  }
}

TEST_CASE("property: random IOB2 sequences round-trip through spans") {
  Rng rng(20240611);
  const std::vector<std::string> labels = {"A", "B", "per son", "GPE", "x-y", "L6"};
  for (int n = 0; n < 10000; ++n) {
    const std::size_t len = rng.below(33);
    const Tags tags = testing::random_tags(rng, len, labels);
    REQUIRE(is_valid_iob2(tags));
    const SpanSet spans = tags_to_spans(tags, Scheme::Strict);
    for (std::size_t i = 1; i < spans.size(); ++i) {
      REQUIRE(spans[i].start > spans[i - 1].end);
    }
    REQUIRE(spans_to_tags(spans, len) == tags);
  }
}

TEST_CASE("property: canonicalization of arbitrary tag soup is IOB2 and stable") {
  Rng rng(7);
  const std::vector<std::string> labels = {"A", "B", "C"};
  for (int n = 0; n < 2000; ++n) {
    const Tags tags = testing::random_tags(rng, rng.below(16), labels, true);
    const Tags canon = canonicalize_iob2(tags);
    REQUIRE(is_valid_iob2(canon));
    REQUIRE(canonicalize_iob2(canon) == canon);
    REQUIRE(tags_to_spans(canon) == tags_to_spans(tags));
  }
}

TEST_CASE("validate_sentence") {
  TaggedSentence s{{"a", "b"}, {"O"}, {}, {}, {}};
  CHECK_THROWS_AS(validate_sentence(s), Error);
  s.tags = {"O", "B-X"};
  CHECK_NOTHROW(validate_sentence(s));
  s.tokens[0] = "a b";
  CHECK_THROWS_AS(validate_sentence(s), Error);
}

TEST_CASE("split_whitespace and join_tokens") {
  CHECK(split_whitespace("  a \t b\nc  ") == Tags{"a", "b", "c"});
  CHECK(split_whitespace("").empty());
  CHECK(join_tokens(Tags{"a", "b"}) == "a b");
}
