#include <gtest/gtest.h>

#include <random>
#include <string>

#include "layoutforge/corpus.hpp"
#include "oracles.hpp"

using namespace layoutforge;

namespace {

LetterStream letters(std::u32string_view text) {
  LetterStream s;
  for (char32_t c : text) {
    if (c == U' ') {
      s.push_boundary();
    } else {
      s.push_letter(c);
    }
  }
  return s;
}

}  // namespace

TEST(NormalizeText, EmptyAndAsciiUnchanged) {
  EXPECT_EQ(normalize_text(""), "");
  EXPECT_EQ(normalize_text("abc"), "abc");
}

TEST(NormalizeText, ComposesBengaliTwoPartVowelSign) {
  // U+09C7 U+09BE -> U+09CB (checked against Python unicodedata NFC).
  EXPECT_EQ(normalize_text(utf8::encode(U"\u09C7\u09BE")), utf8::encode(U"\u09CB"));
  EXPECT_EQ(normalize_text(utf8::encode(U"\u0995\u09C7\u09D7")), utf8::encode(U"\u0995\u09CC"));
  EXPECT_EQ(normalize_text(utf8::encode(U"\u09CB")), utf8::encode(U"\u09CB"));
}

TEST(NormalizeText, InvalidUtf8ReportsPosition) {
  try {
    normalize_text(std::string("ab\xC3(", 4));
    FAIL() << "expected InvalidEncoding";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidEncoding);
    EXPECT_EQ(e.position(), 2u);
  }
  // Overlong encoding of '/' and an encoded surrogate.
  EXPECT_THROW(normalize_text("\xC0\xAF"), Error);
  EXPECT_THROW(normalize_text("\xED\xA0\x80"), Error);
  // Truncated three-byte sequence at the end.
  EXPECT_THROW(normalize_text("\xE0\xA6"), Error);
}

TEST(Tokenize, Examples) {
  const auto bangla = AlphabetConfig::bangla();
  const auto empty = tokenize("", bangla);
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(empty.letter_count(), 0u);

  const auto two = tokenize("ক খ", bangla);
  ASSERT_EQ(two.tokens().size(), 3u);
  EXPECT_EQ(two.tokens()[0], Token::letter(U'ক'));
  EXPECT_TRUE(two.tokens()[1].is_boundary());
  EXPECT_EQ(two.tokens()[2], Token::letter(U'খ'));
  EXPECT_EQ(two.letter_count(), 2u);

  // Bengali digits are excluded by default, ASCII digits are outside the block.
  EXPECT_EQ(tokenize("ক12খ", bangla).tokens(), two.tokens());
  EXPECT_EQ(tokenize("ক১২খ", bangla).tokens(), two.tokens());
}

TEST(Tokenize, BoundariesCollapseAndLeadingRunsKept) {
  const auto s = tokenize("  ,.ক ।  খ!!", AlphabetConfig::bangla());
  ASSERT_EQ(s.tokens().size(), 5u);
  EXPECT_TRUE(s.tokens()[0].is_boundary());
  EXPECT_TRUE(s.tokens()[2].is_boundary());
  EXPECT_TRUE(s.tokens()[4].is_boundary());
  for (std::size_t i = 1; i < s.tokens().size(); ++i) {
    EXPECT_FALSE(s.tokens()[i].is_boundary() && s.tokens()[i - 1].is_boundary());
  }
}

TEST(Tokenize, ViramaIsALetterAndDandaIsNot) {
  const auto s = tokenize("ক্ষ।", AlphabetConfig::bangla());
  EXPECT_EQ(s.letter_count(), 3u);
  EXPECT_TRUE(s.tokens().back().is_boundary());

  auto with_danda = AlphabetConfig::bangla();
  with_danda.include.insert(0x0964);
  EXPECT_EQ(tokenize("ক্ষ।", with_danda).letter_count(), 4u);

  auto no_virama = AlphabetConfig::bangla();
  no_virama.exclude.insert(0x09CD);
  EXPECT_EQ(tokenize("ক্ষ", no_virama).letter_count(), 2u);
}

TEST(AlphabetConfig, JsonRoundTripAndValidation) {
  const auto j = nlohmann::json::parse(R"({
    "ranges": [["U+0980", "U+09FF"], "U+0041..U+005A"],
    "include": ["U+0964"],
    "exclude": ["U+09E6", "U+09E7"]
  })");
  const auto config = j.get<AlphabetConfig>();
  EXPECT_TRUE(config.contains(0x0995));
  EXPECT_TRUE(config.contains(U'Q'));
  EXPECT_TRUE(config.contains(0x0964));
  EXPECT_FALSE(config.contains(0x09E6));
  EXPECT_FALSE(config.contains(U'q'));
  EXPECT_EQ(nlohmann::json(config).get<AlphabetConfig>(), config);

  EXPECT_THROW(nlohmann::json::parse(R"({"include":["U+0995"],"exclude":["U+0995"]})").get<AlphabetConfig>(),
               Error);
  EXPECT_THROW(nlohmann::json::parse(R"({"ranges":[["U+09FF","U+0980"]]})").get<AlphabetConfig>(), Error);
  EXPECT_THROW(nlohmann::json::parse(R"({"include":["0995"]})").get<AlphabetConfig>(), Error);
}

TEST(LetterStream, AppendInsertsSingleBoundary) {
  auto a = letters(U"কখ ");
  const auto b = letters(U" গ");
  a.append(b);
  EXPECT_EQ(a, letters(U"কখ গ"));

  LetterStream empty;
  empty.append(letters(U"ক"));
  EXPECT_EQ(empty, letters(U"ক"));
  EXPECT_EQ(letters(U"কখ গ ঘঙচ").word_count(), 3u);
}

TEST(CorpusProperties, LetterCountMatchesBruteForceScan) {
  std::mt19937_64 rng(7);
  const std::u32string pool = U"কখগ ািে্ ১২,a।ো";
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const auto bangla = AlphabetConfig::bangla();
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string text;
    const auto len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) text.push_back(pool[pick(rng)]);
    const auto normalized = normalize_text(utf8::encode(text));
    std::size_t expected = 0;
    for (char32_t c : utf8::decode(normalized)) expected += (c >= 0x0980 && c <= 0x09FF && !(c >= 0x09E6 && c <= 0x09EF));
    const auto stream = tokenize(normalized, bangla);
    EXPECT_EQ(stream.letter_count(), expected);

    // Reconstruction is stable.
    const auto again = tokenize(normalize_text(stream.to_text()), bangla);
    EXPECT_EQ(again.tokens(), stream.tokens());

    // Splitting at an inserted boundary character adds letter counts.
    const auto cut = text.size() / 2;
    const auto left = utf8::encode(text.substr(0, cut));
    const auto right = utf8::encode(text.substr(cut));
    EXPECT_EQ(tokenize(left + " " + right, bangla).letter_count(),
              tokenize(left, bangla).letter_count() + tokenize(right, bangla).letter_count());
  }
}

TEST(Ingest, DecomposedAndComposedCountAlike) {
  const auto bangla = AlphabetConfig::bangla();
  const auto composed = ingest(utf8::encode(U"\u0995\u09CB"), bangla);
  const auto decomposed = ingest(utf8::encode(U"\u0995\u09C7\u09BE"), bangla);
  EXPECT_EQ(composed.tokens(), decomposed.tokens());
  EXPECT_EQ(decomposed.letter_count(), 2u);
  EXPECT_EQ(decomposed.source_bytes(), 9u);
}

TEST(Ingest, FilesConcatenateWithBoundaryInGivenOrder) {
  const auto dir = std::filesystem::temp_directory_path() / "layoutforge_corpus_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.txt") << "কখ";
    std::ofstream(dir / "b.txt") << "গঘ";
  }
  const auto streams = ingest_each({dir / "b.txt", dir / "a.txt"}, AlphabetConfig::bangla());
  ASSERT_EQ(streams.size(), 2u);
  EXPECT_EQ(concatenate(streams).tokens(), letters(U"গঘ কখ").tokens());
  EXPECT_EQ(concatenate(streams).source_bytes(), 12u);
  EXPECT_THROW(ingest_each({dir / "missing.txt"}, AlphabetConfig::bangla()), Error);
  std::filesystem::remove_all(dir);
}

TEST(AlphabetConfig, BundledFileMatchesBuiltin) {
  EXPECT_EQ(load_alphabet(std::filesystem::path(LAYOUTFORGE_SOURCE_DIR) / "data/config/bangla-alphabet.json"),
            AlphabetConfig::bangla());
}
