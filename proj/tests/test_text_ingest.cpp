#include <random>
#include <stdexcept>

#include "doctest.h"
#include "emend/text_ingest.hpp"

using namespace emend;

namespace {

// Independent oracle: count non-canonical apostrophe codepoints by scanning
// the decoded input one codepoint at a time.
std::size_t oracle_count_substitutions(const std::string& raw) {
  std::size_t count = 0;
  for (char32_t cp : utf8_decode(raw)) {
    for (char32_t member : apostrophe_codepoints()) {
      if (cp == member && cp != U'\'') ++count;
    }
  }
  return count;
}

std::string random_mixed_string(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "a",  "b",  "z",    "Q",  " ",  "\n", ",",  ".",  "1",  "9",
      "'",  "‘", "’", "ʼ", "e",  "t",  "s",  "d",  "-", "é"};
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string out;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) out += pieces[pick(rng)];
  return out;
}

}  // namespace

TEST_CASE("unify_apostrophes replaces the typographic apostrophe") {
  const UnifyResult r = unify_apostrophes("it’s");
  CHECK(r.canonical == "it's");
  REQUIRE(r.substitutions.size() == 1);
  CHECK(r.substitutions[0].first == 2);
  CHECK(r.substitutions[0].second == U'’');
}

TEST_CASE("unify_apostrophes leaves apostrophe-free text unchanged") {
  const UnifyResult r = unify_apostrophes("no apostrophe here");
  CHECK(r.canonical == "no apostrophe here");
  CHECK(r.substitutions.empty());
}

TEST_CASE("unify_apostrophes canonicalizes every member of the codepoint set") {
  const std::string mixed = "a'b‘c’dʼe";
  const UnifyResult r = unify_apostrophes(mixed);
  CHECK(r.canonical == "a'b'c'd'e");
  // oracle: character-by-character scan of the input
  CHECK(r.substitutions.size() == oracle_count_substitutions(mixed));
  CHECK(r.substitutions.size() == 3);
}

TEST_CASE("unify_apostrophes is idempotent and complete (property)") {
  std::mt19937 rng(20260808);
  for (int i = 0; i < 200; ++i) {
    const std::string raw = random_mixed_string(rng);
    const UnifyResult once = unify_apostrophes(raw);
    const UnifyResult twice = unify_apostrophes(once.canonical);
    CHECK(twice.canonical == once.canonical);
    CHECK(twice.substitutions.empty());
    CHECK(once.substitutions.size() == oracle_count_substitutions(raw));
    for (char32_t cp : utf8_decode(once.canonical)) {
      CHECK(cp != U'‘');
      CHECK(cp != U'’');
      CHECK(cp != U'ʼ');
    }
  }
}

TEST_CASE("tokenize keeps apostrophe-bearing clusters whole") {
  const SourceDocument doc = make_document("d", "establish'd the same");
  const std::vector<Token> toks = tokenize(doc);
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].surface == "establish'd");
  CHECK(toks[0].kind == TokenKind::WordCluster);
  REQUIRE(toks[0].apostrophe_offsets.size() == 1);
  CHECK(toks[0].apostrophe_offsets[0].first == 9);
  CHECK(toks[1].surface == "the");
  CHECK(toks[2].surface == "same");
}

TEST_CASE("tokenize records a leading apostrophe") {
  const SourceDocument doc = make_document("d", "'tis");
  const std::vector<Token> toks = tokenize(doc);
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].surface == "'tis");
  REQUIRE(toks[0].apostrophe_offsets.size() == 1);
  CHECK(toks[0].apostrophe_offsets[0].first == 0);
}

TEST_CASE("tokenize: plain word, numbers, punctuation, hyphen split") {
  const SourceDocument doc = make_document("d", "abc");
  const std::vector<Token> toks = tokenize(doc);
  REQUIRE(toks.size() == 1);
  CHECK(toks[0].apostrophe_offsets.empty());

  const SourceDocument doc2 = make_document("d", "well-known 12 men.");
  const std::vector<Token> toks2 = tokenize(doc2);
  REQUIRE(toks2.size() == 6);
  CHECK(toks2[0].surface == "well");
  CHECK(toks2[1].surface == "-");
  CHECK(toks2[1].kind == TokenKind::Punct);
  CHECK(toks2[2].surface == "known");
  CHECK(toks2[3].kind == TokenKind::Number);
  CHECK(toks2[5].surface == ".");
}

TEST_CASE("tokenize records the original codepoint of substituted apostrophes") {
  const SourceDocument doc = make_document("d", "Belov’d it's");
  const std::vector<Token> toks = tokenize(doc);
  REQUIRE(toks.size() == 2);
  REQUIRE(toks[0].apostrophe_offsets.size() == 1);
  CHECK(toks[0].apostrophe_offsets[0].second == U'’');
  REQUIRE(toks[1].apostrophe_offsets.size() == 1);
  CHECK(toks[1].apostrophe_offsets[0].second == U'\'');
}

TEST_CASE("empty documents are rejected upstream") {
  CHECK_THROWS_AS(make_document("d", ""), std::invalid_argument);
}

TEST_CASE("arbitrary bytes decode totally and round trip internally") {
  std::mt19937 rng(123456);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(1, 60);
  for (int i = 0; i < 200; ++i) {
    std::string raw;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) raw.push_back(static_cast<char>(byte(rng)));
    const SourceDocument doc = make_document("d", raw);
    const std::vector<Token> toks = tokenize(doc);
    CHECK(reassemble(doc, toks) == utf8_encode(doc.text));
    const UnifyResult once = unify_apostrophes(utf8_encode(doc.text));
    CHECK(unify_apostrophes(once.canonical).substitutions.empty());
  }
}

TEST_CASE("tokenize round trip is lossless (property)") {
  std::mt19937 rng(97);
  int nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    const std::string raw = random_mixed_string(rng);
    if (raw.empty()) continue;
    ++nonempty;
    const SourceDocument doc = make_document("d", raw);
    const std::vector<Token> toks = tokenize(doc);
    CHECK(reassemble(doc, toks) == utf8_encode(doc.text));
    // spans pairwise disjoint, ascending, and inside the text
    std::size_t prev_end = 0;
    for (const Token& t : toks) {
      CHECK(t.begin >= prev_end);
      CHECK(t.end > t.begin);
      CHECK(t.end <= doc.text.size());
      prev_end = t.end;
      for (const auto& [off, orig] : t.apostrophe_offsets) {
        CHECK(utf8_decode(t.surface).at(off) == U'\'');
      }
    }
    // determinism
    const std::vector<Token> again = tokenize(doc);
    REQUIRE(again.size() == toks.size());
    for (std::size_t k = 0; k < toks.size(); ++k) {
      CHECK(again[k].surface == toks[k].surface);
      CHECK(again[k].begin == toks[k].begin);
    }
  }
  CHECK(nonempty > 250);
}
