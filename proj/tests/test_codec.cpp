#include "doctest.h"

#include "augtag/codec.hpp"
#include "augtag/error.hpp"
#include "augtag/ingest.hpp"
#include "support/generators.hpp"

using namespace augtag;

namespace {

using Tags = std::vector<std::string>;

LabelMap snips_map() {
  std::set<std::string> labels(tables::snips_slots().begin(), tables::snips_slots().end());
  labels.insert(tables::snips_intents().begin(), tables::snips_intents().end());
  return build_labelmap(labels, nullptr, LabelMode::Rules);
}

LabelMap ontonotes_map() {
  return build_labelmap({}, &tables::ontonotes(), LabelMode::Table);
}

TaggedSentence playlist_sentence() {
  TaggedSentence s;
  s.tokens = {"Onto", "jerry’s", "Classical", "Moments", "in", "Movies"};
  s.tags = spans_to_tags({{1, 1, "playlist_owner"}, {2, 5, "playlist"}}, 6);
  return s;
}

TaggedSentence taipei_sentence() {
  TaggedSentence s;
  s.tokens = {"It", "abuts", "Sanchih", "Rural", "Township", "to", "the", "northeast",
              ",", "the", "Kuantu", "area", "of", "Taipei", "City"};
  s.tags = {"O", "O", "B-GPE", "I-GPE", "I-GPE", "O", "O", "O",
            "O", "O", "B-LOC", "O", "O", "B-GPE", "I-GPE"};
  return s;
}

const char* kTaipeiEncoded =
    "It abuts [ Sanchih Rural Township | country city state ] to the northeast , "
    "the [ Kuantu | location ] area of [ Taipei City | country city state ]";

template <typename Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("encode golden strings") {
  CHECK(encode(playlist_sentence(), snips_map()) ==
        "Onto [ jerry’s | playlist owner ] [ Classical Moments in Movies | playlist ]");

  TaggedSentence money{{"These", "two", "men", "have", "two", "dollars"},
                       {"O", "O", "O", "O", "B-money", "O"}, {}, {}, {}};
  CHECK(encode(money, LabelMap::identity()) == "These two men have [ two | money ] dollars");

  TaggedSentence plain{{"hello", "world"}, {"O", "O"}, {}, {}, {}};
  CHECK(encode(plain, LabelMap::identity()) == "hello world");

  CHECK(encode(taipei_sentence(), ontonotes_map()) == kTaipeiEncoded);
}

TEST_CASE("class group leads the output") {
  TaggedSentence s = playlist_sentence();
  s.sentence_class = "AddToPlaylist";
  const std::string text = encode(s, snips_map());
  CHECK(text ==
        "(( add to playlist )) Onto [ jerry’s | playlist owner ] [ Classical Moments "
        "in Movies | playlist ]");
  const Decoded d = decode_strict(text, s.tokens, snips_map());
  CHECK(d.sentence_class == "AddToPlaylist");
  CHECK(d.spans == SpanSet{{1, 1, "playlist_owner"}, {2, 5, "playlist"}});

  TaggedSentence empty;
  empty.sentence_class = "AddToPlaylist";
  CHECK(encode(empty, snips_map()) == "(( add to playlist ))");
  CHECK(decode_strict("(( add to playlist ))", {}, snips_map()).sentence_class ==
        "AddToPlaylist");
}

TEST_CASE("full repetition keeps the money span on the right token") {
  TaggedSentence money{{"These", "two", "men", "have", "two", "dollars"},
                       {"O", "O", "O", "O", "B-money", "O"}, {}, {}, {}};
  const std::string text = encode(money, LabelMap::identity());
  const Decoded d = decode_strict(text, money.tokens, LabelMap::identity());
  CHECK(d.spans == SpanSet{{4, 4, "money"}});

  // The shortened format loses the position: alignment can only guess.
  const TolerantDecoded guess =
      decode_tolerant("[ two | money ]", money.tokens, LabelMap::identity());
  CHECK(guess.spans == SpanSet{{1, 1, "money"}});
  CHECK(guess.diagnostics.unmatched_source_tokens == 5);
}

TEST_CASE("strict decode errors") {
  const auto src = playlist_sentence().tokens;
  const LabelMap map = snips_map();
  CHECK(code_of([&] {
          decode_strict("Onto jerry’s [ Classical Moments in Movies | work of art ]", src, map);
        }) == ErrorCode::UnknownNaturalLabel);
  CHECK(code_of([&] { decode_strict("Onto (( add to playlist )) jerry’s", src, map); }) ==
        ErrorCode::ClassGroupMisplaced);
  CHECK(code_of([&] {
          decode_strict("(( add to playlist )) (( add to playlist )) Onto", src, map);
        }) == ErrorCode::ClassGroupMisplaced);
  CHECK(code_of([&] { decode_strict("Onto [ jerry’s | playlist owner", src, map); }) ==
        ErrorCode::UnbalancedMarkers);
  CHECK(code_of([&] { decode_strict("Onto [ [ jerry’s | playlist owner ]", src, map); }) ==
        ErrorCode::UnbalancedMarkers);
  CHECK(code_of([&] { decode_strict("Onto jerry’s ] x", src, map); }) ==
        ErrorCode::UnbalancedMarkers);
  CHECK(code_of([&] { decode_strict("Onto [ | playlist owner ] x", src, map); }) ==
        ErrorCode::EmptySpanGroup);
  CHECK(code_of([&] { decode_strict("Onto [ jerry’s | ] x", src, map); }) ==
        ErrorCode::EmptyLabel);
  try {
    decode_strict("Onto jerry’s Classical Moments on Movies", src, map);
    FAIL("mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TokenMismatch);
    CHECK(e.index() == 4);
  }
  try {
    decode_strict("Onto jerry’s", src, map);
    FAIL("short text accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TokenMismatch);
    CHECK(e.index() == 2);
  }
  try {
    decode_strict("Onto [ jerry’s ] x", src, map);
    FAIL("group without separator accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnbalancedMarkers);
    CHECK(e.index() == 3);
  }
}

TEST_CASE("is_well_formed") {
  const TaggedSentence s = taipei_sentence();
  CHECK(is_well_formed(encode(s, ontonotes_map()), s.tokens, ontonotes_map()));
  CHECK_FALSE(is_well_formed("", s.tokens, ontonotes_map()));
  CHECK(is_well_formed("", {}, ontonotes_map()));
  // Sequence-to-BIO prediction, one tag too many and shifted by one.
  const std::string naive = "O O O B-GPE I-GPE I-GPE O O O O O B-GPE O O B-GPE I-GPE";
  CHECK_FALSE(is_well_formed(naive, s.tokens, ontonotes_map()));
  CodecConfig bad;
  bad.close_marker = "[";
  CHECK_FALSE(is_well_formed("x", std::vector<std::string>{"x"}, LabelMap::identity(), bad));
}

TEST_CASE("marker tokens are escaped and restored") {
  TaggedSentence s{{"[", "a", "|", "\\[", "))", "\\", "\\x"},
                   {"B-L", "I-L", "O", "B-M", "O", "O", "O"}, {}, {}, {}};
  const std::string text = encode(s, LabelMap::identity());
  CHECK(text == "[ \\[ a | L ] \\| [ \\\\[ | M ] \\)) \\ \\x");
  const Decoded d = decode_strict(text, s.tokens, LabelMap::identity());
  CHECK(d.spans == tags_to_spans(s.tags));

  CodecConfig raw;
  raw.escaping_enabled = false;
  CHECK(code_of([&] { encode(s, LabelMap::identity(), raw); }) ==
        ErrorCode::UnescapableToken);
  TaggedSentence harmless{{"\\[", "a"}, {"O", "O"}, {}, {}, {}};
  CHECK(encode(harmless, LabelMap::identity(), raw) == "\\[ a");
}

TEST_CASE("escape helpers are mutually inverse") {
  const CodecConfig c;
  for (const std::string t : {"[", "\\[", "\\\\[", "x", "\\", "\\x", "((", "\\))", "|x"}) {
    CAPTURE(t);
    CHECK(unescape_token(escape_token(t, c), c) == t);
  }
}

TEST_CASE("labels that cannot survive tokenization are rejected") {
  TaggedSentence s{{"a"}, {"B-x | y"}, {}, {}, {}};
  CHECK(code_of([&] { encode(s, LabelMap::identity()); }) == ErrorCode::UnencodableLabel);
  s.tags = {"B-a  b"};
  CHECK(code_of([&] { encode(s, LabelMap::identity()); }) == ErrorCode::UnencodableLabel);
}

TEST_CASE("custom markers") {
  CodecConfig c;
  c.open_marker = "<<";
  c.close_marker = ">>";
  c.sep_marker = "=";
  c.class_open = "{";
  c.class_close = "}";
  c.escape_char = "~";
  TaggedSentence s{{"a", "[", "=", "b"}, {"B-X", "I-X", "O", "B-Y"}, "Q", {}, {}};
  const std::string text = encode(s, LabelMap::identity(), c);
  CHECK(text == "{ Q } << a [ = X >> ~= << b = Y >>");
  const Decoded d = decode_strict(text, s.tokens, LabelMap::identity(), c);
  CHECK(d.spans == tags_to_spans(s.tags));
  CHECK(d.sentence_class == "Q");

  CodecConfig dup;
  dup.sep_marker = "[";
  CHECK(code_of([&] { validate_config(dup); }) == ErrorCode::InvalidConfig);
  CodecConfig spaced;
  spaced.open_marker = "[ [";
  CHECK(code_of([&] { validate_config(spaced); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("property: encode then strict decode is the identity") {
  Rng rng(99);
  const std::vector<std::string> label_pool = tables::snips_slots();
  const LabelMap map = snips_map();
  for (int n = 0; n < 3000; ++n) {
    std::vector<std::string> labels;
    const std::size_t count = 1 + rng.below(8);
    for (std::size_t i = 0; i < count; ++i) labels.push_back(label_pool[rng.below(label_pool.size())]);
    const TaggedSentence s = testing::random_sentence(rng, labels, tables::snips_intents());
    const std::string text = encode(s, map);
    const Decoded d = decode_strict(text, s.tokens, map);
    REQUIRE(spans_to_tags(d.spans, s.size()) == s.tags);
    REQUIRE(d.sentence_class == s.sentence_class);
    const TolerantDecoded t = decode_tolerant(text, s.tokens, map);
    REQUIRE(t.spans == d.spans);
    REQUIRE(t.sentence_class == d.sentence_class);
    REQUIRE_FALSE(t.diagnostics.repaired);
    REQUIRE(t.diagnostics.notes.empty());
  }
}

TEST_CASE("tolerant decode recovers from a deleted token") {
  const TaggedSentence s = taipei_sentence();
  const std::string text =
      "It abuts [ Sanchih Rural Township | country city state ] to the northeast , "
      "the [ Kuantu | location ] of [ Taipei City | country city state ]";
  const TolerantDecoded d = decode_tolerant(text, s.tokens, ontonotes_map());
  CHECK(d.spans == SpanSet{{2, 4, "GPE"}, {10, 10, "LOC"}, {13, 14, "GPE"}});
  CHECK(d.diagnostics.unmatched_source_tokens == 1);
  CHECK(d.diagnostics.dropped_output_tokens == 0);
  CHECK(d.diagnostics.malformed_groups == 0);
  CHECK(d.diagnostics.repaired);
}

TEST_CASE("tolerant decode recovers a truncated last group") {
  const TaggedSentence s = taipei_sentence();
  std::string text = kTaipeiEncoded;
  text.resize(text.size() - 2);
  const TolerantDecoded d = decode_tolerant(text, s.tokens, ontonotes_map());
  CHECK(d.spans == tags_to_spans(s.tags));
  CHECK(d.diagnostics.malformed_groups == 1);

  // Truncated inside the label: the group is dropped, its tokens stay.
  const TolerantDecoded cut = decode_tolerant(
      "It abuts [ Sanchih Rural Township | country city", s.tokens, ontonotes_map());
  CHECK(cut.spans.empty());
  CHECK(cut.diagnostics.malformed_groups == 1);
  CHECK(cut.diagnostics.unmatched_source_tokens == 10);
}

TEST_CASE("tolerant decode: missing close marker mid-sentence") {
  const TaggedSentence s = taipei_sentence();
  const std::string text =
      "It abuts [ Sanchih Rural Township | country city state to the northeast , "
      "the [ Kuantu | location ] area of [ Taipei City | country city state ]";
  const TolerantDecoded d = decode_tolerant(text, s.tokens, ontonotes_map());
  CHECK(d.spans == tags_to_spans(s.tags));
  CHECK(d.diagnostics.malformed_groups == 1);
  CHECK(d.diagnostics.unmatched_source_tokens == 0);
}

TEST_CASE("tolerant decode: labels, classes and nesting") {
  const std::vector<std::string> src = {"a", "b", "c", "d"};
  const LabelMap map = build_labelmap({"GetWeather", "city", "state"}, nullptr, LabelMode::Rules);

  auto d = decode_tolerant("a [ b c | City ] d", src, map);
  CHECK(d.spans == SpanSet{{1, 2, "city"}});
  CHECK(d.diagnostics.repaired);

  d = decode_tolerant("a [ b c | town ] d", src, map);
  CHECK(d.spans.empty());
  CHECK(d.diagnostics.notes.size() == 1);

  d = decode_tolerant("a b (( get weather )) c d", src, map);
  CHECK(d.sentence_class == "GetWeather");
  CHECK(d.diagnostics.unmatched_source_tokens == 0);

  d = decode_tolerant("a [ b [ c | state ] d | city ]", src, map);
  CHECK(d.spans == SpanSet{{1, 3, "city"}});
  CHECK(d.diagnostics.malformed_groups == 1);

  d = decode_tolerant("] a | b )) c [ d", src, map);
  CHECK(d.spans.empty());
  CHECK(d.diagnostics.malformed_groups == 4);
  CHECK(d.diagnostics.unmatched_source_tokens == 0);

  d = decode_tolerant("a [ b x c | city ] d", src, map);
  CHECK(d.spans == SpanSet{{1, 2, "city"}});
  CHECK(d.diagnostics.dropped_output_tokens == 1);

  d = decode_tolerant("a [ b d | city ]", src, map);
  CHECK(d.spans == SpanSet{{1, 1, "city"}, {3, 3, "city"}});
  CHECK(d.diagnostics.unmatched_source_tokens == 1);
}

TEST_CASE("case-insensitive alignment is opt-in") {
  const std::vector<std::string> src = {"play", "Jerry", "now"};
  CodecConfig c;
  auto d = decode_tolerant("play [ jerry | artist ] now", src, LabelMap::identity(), c);
  CHECK(d.spans.empty());
  c.case_insensitive_align = true;
  d = decode_tolerant("play [ jerry | artist ] now", src, LabelMap::identity(), c);
  CHECK(d.spans == SpanSet{{1, 1, "artist"}});
}

TEST_CASE("property: tolerant decode is total") {
  Rng rng(5);
  const LabelMap map = snips_map();
  const std::vector<std::string> labels = {"city", "state", "artist", "playlist_owner"};
  const auto& marks = testing::marker_vocabulary();
  for (int n = 0; n < 3000; ++n) {
    const TaggedSentence s = testing::random_sentence(rng, labels, tables::snips_intents());
    std::string text;
    if (n % 2 == 0) {
      CorruptionSpec spec{0.2, 0.2, 0.3, 0.2, rng.next()};
      text = corrupt(encode(s, map), spec);
    } else {
      // Pure noise from source tokens, markers and label words.
      const std::size_t len = rng.below(40);
      for (std::size_t i = 0; i < len; ++i) {
        const auto r = rng.below(4);
        if (r == 0) text += marks[rng.below(5)];
        else if (r == 1) text += "city";
        else text += s.tokens[rng.below(s.size())];
        text += ' ';
      }
    }
    const TolerantDecoded d = decode_tolerant(text, s.tokens, map);
    const Tags tags = spans_to_tags(d.spans, s.size());
    REQUIRE(tags.size() == s.size());
    REQUIRE(is_valid_iob2(tags));
  }
}
