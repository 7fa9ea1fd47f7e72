#pragma once

// Published frequency tables from the Bangla digraph study, used as
// arithmetic fixtures. The top symbol is taken to be the vowel sign U+09BE,
// which is what the worked ক example pairs it with.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "layoutforge/stats.hpp"

namespace fixtures {

inline constexpr std::uint64_t kTotalLetters = 821914;  // 74300 / 9.039875 %
inline constexpr std::uint64_t kKaInvolvement = 38291;   // 8316 / 21.717897 %
inline constexpr char32_t kKa = U'ক';

struct Table2Row {
  std::u32string digraph;
  std::uint64_t count;
  double support;
  double confidence;
};

inline const std::vector<Table2Row>& table2() {
  static const std::vector<Table2Row> rows{
      {U"কে", 8316, 1.011785, 21.717897},  // কে
      {U"কা", 8000, 0.973338, 20.892638},  // কা
      {U"কর", 4134, 0.502972, 10.796271},  // কর
      {U"কি", 3094, 0.376438, 8.080228},   // কি
      {U"এক", 2062, 0.250878, 5.385077},   // এক
      {U"তক", 1231, 0.149772, 3.214855},   // তক
      {U"বক", 1153, 0.140282, 3.011151},   // বক
  };
  return rows;
}

/// Table 2's seven digraphs plus one filler digraph (ক + ট, U+099F, a letter
/// on neither hand) carrying the rest of ক's involvement, 38291 - 27990.
inline layoutforge::NGramTable table2_digraphs() {
  std::map<layoutforge::Gram, std::uint64_t> counts;
  for (const auto& r : table2()) counts[r.digraph] = r.count;
  counts[U"কট"] = kKaInvolvement - 27990;
  return layoutforge::NGramTable::from_counts(2, counts, kTotalLetters);
}

/// Table 1: the ten most frequent letters.
inline layoutforge::NGramTable table1_monograms() {
  const std::map<layoutforge::Gram, std::uint64_t> counts{
      {U"া", 74300}, {U"ে", 45525}, {U"র", 41844}, {U"ি", 37010}, {U"ক", 31214},
      {U"ই", 28996}, {U"ব", 28212}, {U"ত", 21451}, {U"প", 18419}, {U"ম", 17202},
  };
  return layoutforge::NGramTable::from_counts(1, counts, kTotalLetters);
}

struct Table3Row {
  const char* name;
  std::uint64_t switching, left, right, nd;
};

inline const std::vector<Table3Row>& table3() {
  static const std::vector<Table3Row> rows{
      {"Proposed Optimal keyboard layout", 410113, 380058, 340903, 133290},
      {"Bijoy keyboard layout", 358873, 475556, 242526, 138643},
      {"Proposed layout 3", 358672, 319946, 363077, 173702},
  };
  return rows;
}

}  // namespace fixtures
