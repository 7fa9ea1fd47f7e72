#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "layoutforge/stats.hpp"
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

TEST(CountNgrams, Examples) {
  const auto kakaka = letters(U"ককক");
  const auto mono = count_ngrams(kakaka, 1);
  EXPECT_EQ(mono.counts(), (std::map<Gram, std::uint64_t>{{U"ক", 3}}));
  EXPECT_EQ(mono.total_letters(), 3u);
  EXPECT_EQ(count_ngrams(kakaka, 2).counts(), (std::map<Gram, std::uint64_t>{{U"কক", 2}}));
  EXPECT_TRUE(count_ngrams(letters(U"ক খ"), 2).empty());
  EXPECT_EQ(count_ngrams(letters(U"ক খ"), 2, {.span_boundaries = true}).count(U"কখ"), 1u);
  EXPECT_EQ(count_ngrams(letters(U"কখগঘ"), 3).size(), 2u);
  EXPECT_THROW(count_ngrams(kakaka, 4), Error);
}

TEST(Support, Examples) {
  const auto di = fixtures::table2_digraphs();
  EXPECT_NEAR(support(di, U"কে"), 1.011785, 1e-5);
  EXPECT_EQ(support(di, U"খখ"), 0.0);
  EXPECT_DOUBLE_EQ(support(count_ngrams(letters(U"ক"), 1), U"ক"), 100.0);
  EXPECT_THROW(support(NGramTable(1), U"ক"), Error);
}

TEST(InvolvementTotal, Examples) {
  std::map<Gram, std::uint64_t> seven;
  for (const auto& r : fixtures::table2()) seven[r.digraph] = r.count;
  EXPECT_EQ(involvement_total(NGramTable::from_counts(2, seven, fixtures::kTotalLetters), fixtures::kKa), 27990u);
  EXPECT_EQ(involvement_total(fixtures::table2_digraphs(), fixtures::kKa), 38291u);
  EXPECT_EQ(involvement_total(NGramTable(2), fixtures::kKa), 0u);
  // A doubled digraph counts once.
  EXPECT_EQ(involvement_total(count_ngrams(letters(U"কককখ"), 2), U'ক'), 3u);
  EXPECT_THROW(involvement_total(NGramTable(1), U'ক'), Error);
}

TEST(DigraphConfidence, Examples) {
  const auto di = fixtures::table2_digraphs();
  EXPECT_NEAR(digraph_confidence(di, fixtures::kKa, U"কে"), 21.717897, 1e-4);
  EXPECT_NEAR(digraph_confidence(di, fixtures::kKa, U"এক"), 5.385077, 1e-4);
  EXPECT_EQ(digraph_confidence(di, fixtures::kKa, U"কখ"), 0.0);
  EXPECT_THROW(digraph_confidence(di, fixtures::kKa, U"খগ"), Error);
  try {
    digraph_confidence(di, U'খ', U"খগ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoInvolvement);
  }
}

TEST(SideScores, WorkedExample) {
  const auto mono = fixtures::table1_monograms();
  const auto di = fixtures::table2_digraphs();
  const std::vector<CodePoint> left{U'ে', U'র'};
  const std::vector<CodePoint> right{U'া', U'ি'};
  const auto l = side_scores(fixtures::kKa, left, mono, di);
  const auto r = side_scores(fixtures::kKa, right, mono, di);
  EXPECT_NEAR(l.support, 1.514757, 1e-5);
  EXPECT_NEAR(l.confidence, 32.514168, 1e-5);
  EXPECT_NEAR(r.support, 1.349776, 1e-5);
  EXPECT_NEAR(r.confidence, 28.972866, 1e-5);
  EXPECT_EQ(side_scores(fixtures::kKa, {}, mono, di), SideScore{});
  EXPECT_THROW(side_scores(U'ে', left, mono, di), Error);
}

TEST(SideScores, BothOrientationsCount) {
  const auto s = letters(U"কখ খক কগ");
  const auto mono = count_ngrams(s, 1);
  const auto di = count_ngrams(s, 2);
  const std::vector<CodePoint> side{U'খ'};
  const auto score = side_scores(U'ক', side, mono, di);
  EXPECT_DOUBLE_EQ(score.support, 100.0 * 2 / 6);
  EXPECT_DOUBLE_EQ(score.confidence, 100.0 * 2 / 3);
  // A letter without any digraph scores zero instead of failing.
  EXPECT_EQ(side_scores(U'ঘ', side, mono, di), SideScore{});
}

TEST(RankedMonograms, OrderAndTies) {
  const auto ranked = ranked_monograms(fixtures::table1_monograms());
  ASSERT_EQ(ranked.size(), 10u);
  EXPECT_EQ(ranked[0].letter, U'া');
  EXPECT_EQ(ranked[0].count, 74300u);
  EXPECT_NEAR(ranked[0].percentage, 9.039875, 1e-6);
  EXPECT_NEAR(ranked[1].percentage, 5.538901, 1e-6);

  const auto tie = ranked_monograms(count_ngrams(letters(U"খকখক"), 1));
  EXPECT_EQ(tie[0].letter, U'ক');
  EXPECT_EQ(tie[1].letter, U'খ');

  const auto single = ranked_monograms(count_ngrams(letters(U"ক"), 1));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_DOUBLE_EQ(single[0].percentage, 100.0);
  EXPECT_THROW(ranked_monograms(NGramTable(1)), Error);
}

TEST(StatsProperties, MatchBruteForceAndSumToHundred) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alphabet = oracle::random_alphabet(rng, 3 + rng() % 12);
    const auto stream = oracle::random_stream(rng, alphabet, 1 + rng() % 400);
    for (int n = 1; n <= 3; ++n) {
      EXPECT_EQ(count_ngrams(stream, n).counts(), oracle::window_counts(stream, n));
    }
    const auto mono = count_ngrams(stream, 1);
    const auto di = count_ngrams(stream, 2);
    EXPECT_EQ(mono.sum(), mono.total_letters());
    EXPECT_LE(di.sum(), stream.letter_count() - stream.word_count());
    double total = 0;
    for (const auto& [g, c] : mono.counts()) total += support(mono, g);
    EXPECT_NEAR(total, 100.0, 1e-9);
    for (const auto& [g, c] : mono.counts()) {
      const auto involvement = involvement_total(di, g[0]);
      EXPECT_LE(involvement, 2 * c);
      if (involvement == 0) continue;
      double conf = 0;
      for (const auto& [d, k] : di.counts()) {
        if (d[0] == g[0] || d[1] == g[0]) conf += digraph_confidence(di, g[0], d);
      }
      EXPECT_NEAR(conf, 100.0, 1e-9);
    }
  }
}

TEST(StatsProperties, MergeIsOrderIndependent) {
  std::mt19937_64 rng(5);
  const auto alphabet = oracle::random_alphabet(rng, 8);
  const auto a = oracle::random_stream(rng, alphabet, 300);
  const auto b = oracle::random_stream(rng, alphabet, 200);
  for (int n = 1; n <= 3; ++n) {
    auto ab = count_ngrams(a, n);
    ab += count_ngrams(b, n);
    auto ba = count_ngrams(b, n);
    ba += count_ngrams(a, n);
    EXPECT_EQ(ab, ba);
    // Same as counting the concatenation with a boundary between the parts.
    EXPECT_EQ(ab, count_ngrams(concatenate({a, b}), n));
  }
}

TEST(StatsTsv, WritesDescendingAndReadsBack) {
  const auto stream = letters(U"কককখখগ কখ");
  const auto di = count_ngrams(stream, 2);
  std::ostringstream out;
  write_table_tsv(out, count_ngrams(stream, 1), R"({"k":1})");
  EXPECT_EQ(out.str(),
            "# config: {\"k\":1}\n# total_letters: 8\ngram\tcount\tpercentage\n"
            "ক\t4\t50.000000\nখ\t3\t37.500000\nগ\t1\t12.500000\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_table_tsv(in, 1), count_ngrams(stream, 1));

  std::ostringstream dout;
  write_table_tsv(dout, di);
  std::istringstream din(dout.str());
  EXPECT_EQ(read_table_tsv(din, 2), di);

  std::istringstream bad("gram\tcount\tpercentage\nকখ\t2\t1.0\n");
  EXPECT_THROW(read_table_tsv(bad, 1), Error);
}

TEST(StatsTsv, AssociationExport) {
  std::ostringstream out;
  write_association_tsv(out, fixtures::table2_digraphs(), fixtures::kKa);
  const auto text = out.str();
  EXPECT_NE(text.find("digraph\tcount\tsupport\tconfidence\n"), std::string::npos);
  EXPECT_NE(text.find("কে\t8316\t1.011785\t21.717897\n"), std::string::npos);
  EXPECT_NE(text.find("এক\t2062\t0.250878\t5.385077\n"), std::string::npos);
}
