#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "unicode.hpp"

namespace layoutforge {

using Gram = std::u32string;

/// Frequencies of n-grams (n = 1, 2 or 3) plus the letter total of the
/// stream they came from. Zero counts are never stored.
class NGramTable {
 public:
  explicit NGramTable(int n = 1) : n_(n) {
    if (n < 1 || n > 3) throw Error(ErrorKind::InvalidArgument, "n-gram order must be 1, 2 or 3");
  }

  static NGramTable from_counts(int n, const std::map<Gram, std::uint64_t>& counts,
                                std::uint64_t total_letters) {
    NGramTable table(n);
    for (const auto& [gram, count] : counts) table.add(gram, count);
    table.total_letters_ = total_letters;
    return table;
  }

  int n() const { return n_; }
  std::uint64_t total_letters() const { return total_letters_; }
  void set_total_letters(std::uint64_t total) { total_letters_ = total; }
  const std::map<Gram, std::uint64_t>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }
  std::size_t size() const { return counts_.size(); }

  std::uint64_t count(const Gram& gram) const {
    const auto it = counts_.find(gram);
    return it == counts_.end() ? 0 : it->second;
  }

  void add(const Gram& gram, std::uint64_t k = 1) {
    if (gram.size() != static_cast<std::size_t>(n_)) {
      throw Error(ErrorKind::InvalidArgument, "gram length does not match table order");
    }
    if (k > 0) counts_[gram] += k;
  }

  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (const auto& [gram, count] : counts_) s += count;
    return s;
  }

  /// Commutative merge: counts and totals add.
  NGramTable& operator+=(const NGramTable& other) {
    if (other.n_ != n_) throw Error(ErrorKind::InvalidArgument, "cannot merge tables of different order");
    for (const auto& [gram, count] : other.counts_) counts_[gram] += count;
    total_letters_ += other.total_letters_;
    return *this;
  }

  friend bool operator==(const NGramTable&, const NGramTable&) = default;

 private:
  int n_;
  std::map<Gram, std::uint64_t> counts_;
  std::uint64_t total_letters_ = 0;
};

inline Gram digraph(CodePoint a, CodePoint b) { return Gram{a, b}; }

struct CountOptions {
  /// Let windows run across word boundaries (boundary tokens are skipped).
  bool span_boundaries = false;
};

/// Counts every window of n consecutive letters. Unless spanning is enabled a
/// window never contains a boundary.
inline NGramTable count_ngrams(const LetterStream& stream, int n, CountOptions options = {}) {
  NGramTable table(n);
  Gram window;
  for (Token t : stream.tokens()) {
    if (t.is_boundary()) {
      if (!options.span_boundaries) window.clear();
      continue;
    }
    window.push_back(t.code_point());
    if (window.size() > static_cast<std::size_t>(n)) window.erase(window.begin());
    if (window.size() == static_cast<std::size_t>(n)) table.add(window);
  }
  table.set_total_letters(stream.letter_count());
  return table;
}

/// 100 * count / total_letters.
inline double support(const NGramTable& table, const Gram& gram) {
  if (table.total_letters() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  return 100.0 * static_cast<double>(table.count(gram)) /
         static_cast<double>(table.total_letters());
}

/// Sum of counts of all digraphs containing `letter` in either position; a
/// doubled digraph counts once.
inline std::uint64_t involvement_total(const NGramTable& digraphs, CodePoint letter) {
  if (digraphs.n() != 2) throw Error(ErrorKind::InvalidArgument, "involvement needs a digraph table");
  std::uint64_t total = 0;
  for (const auto& [gram, count] : digraphs.counts()) {
    if (gram[0] == letter || gram[1] == letter) total += count;
  }
  return total;
}

/// Share of the focus letter's digraph involvement taken by one digraph, in
/// percent.
inline double digraph_confidence(const NGramTable& digraphs, CodePoint focus, const Gram& gram) {
  if (gram.size() != 2 || (gram[0] != focus && gram[1] != focus)) {
    throw Error(ErrorKind::InvalidArgument, "digraph does not contain the focus letter");
  }
  const auto involvement = involvement_total(digraphs, focus);
  if (involvement == 0) {
    throw Error(ErrorKind::NoInvolvement,
                "letter " + code_point_label(focus) + " appears in no digraph");
  }
  return 100.0 * static_cast<double>(digraphs.count(gram)) / static_cast<double>(involvement);
}

struct SideScore {
  double support = 0.0;     // percent of all letters
  double confidence = 0.0;  // percent of the focus letter's involvement
  friend bool operator==(const SideScore&, const SideScore&) = default;
};

/// Cumulative support and confidence of `focus` against every letter of one
/// hand, counting both orders of each pair. A focus letter with no digraphs
/// scores zero rather than failing.
inline SideScore side_scores(CodePoint focus, std::span<const CodePoint> side,
                             const NGramTable& mono, const NGramTable& digraphs) {
  if (mono.total_letters() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  std::uint64_t joint = 0;
  for (CodePoint other : side) {
    if (other == focus) {
      throw Error(ErrorKind::InvalidArgument,
                  "focus letter " + code_point_label(focus) + " is already on this side");
    }
    joint += digraphs.count(digraph(focus, other)) + digraphs.count(digraph(other, focus));
  }
  SideScore score;
  score.support = 100.0 * static_cast<double>(joint) / static_cast<double>(mono.total_letters());
  const auto involvement = involvement_total(digraphs, focus);
  if (involvement > 0) {
    score.confidence = 100.0 * static_cast<double>(joint) / static_cast<double>(involvement);
  }
  return score;
}

struct RankedLetter {
  CodePoint letter = 0;
  std::uint64_t count = 0;
  double percentage = 0.0;
  friend bool operator==(const RankedLetter&, const RankedLetter&) = default;
};

/// Monograms by descending count, ties by ascending code point.
inline std::vector<RankedLetter> ranked_monograms(const NGramTable& mono) {
  if (mono.n() != 1) throw Error(ErrorKind::InvalidArgument, "ranking needs a monogram table");
  if (mono.empty() || mono.total_letters() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  std::vector<RankedLetter> ranked;
  ranked.reserve(mono.size());
  for (const auto& [gram, count] : mono.counts()) {
    ranked.push_back({gram[0], count, support(mono, gram)});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedLetter& a, const RankedLetter& b) {
    return a.count != b.count ? a.count > b.count : a.letter < b.letter;
  });
  return ranked;
}

struct AssociationRow {
  Gram digraph;
  std::uint64_t count = 0;
  double support = 0.0;
  double confidence = 0.0;
};

/// Every digraph containing `focus`, descending by count.
inline std::vector<AssociationRow> associations(const NGramTable& digraphs, CodePoint focus) {
  std::vector<AssociationRow> rows;
  for (const auto& [gram, count] : digraphs.counts()) {
    if (gram[0] != focus && gram[1] != focus) continue;
    rows.push_back({gram, count, support(digraphs, gram), digraph_confidence(digraphs, focus, gram)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const AssociationRow& a, const AssociationRow& b) {
    return a.count != b.count ? a.count > b.count : a.digraph < b.digraph;
  });
  return rows;
}

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline void write_preamble(std::ostream& out, const std::string& config_echo) {
  if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
}

}  // namespace detail

/// TSV `gram count percentage`, descending by count. The letter total rides
/// along in a comment so digraph tables can be read back losslessly.
inline void write_table_tsv(std::ostream& out, const NGramTable& table,
                            const std::string& config_echo = {}) {
  detail::write_preamble(out, config_echo);
  out << "# total_letters: " << table.total_letters() << '\n';
  out << "gram\tcount\tpercentage\n";
  std::vector<std::pair<Gram, std::uint64_t>> rows(table.counts().begin(), table.counts().end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (const auto& [gram, count] : rows) {
    const double pct = table.total_letters() == 0 ? 0.0 : support(table, gram);
    out << utf8::encode(gram) << '\t' << count << '\t' << detail::fixed6(pct) << '\n';
  }
}

/// Reads a table written by write_table_tsv. Without a total comment the
/// total of a monogram table is its count sum.
inline NGramTable read_table_tsv(std::istream& in, int n) {
  NGramTable table(n);
  std::optional<std::uint64_t> total;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "# total_letters: ";
      if (line.starts_with(key)) total = std::stoull(line.substr(key.size()));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line.starts_with("gram\t")) continue;
    }
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "stats TSV line " + std::to_string(line_no) + " has no count");
    }
    const auto gram = utf8::decode(line.substr(0, tab1));
    const auto count_text = line.substr(tab1 + 1, tab2 == std::string::npos ? std::string::npos : tab2 - tab1 - 1);
    std::uint64_t count = 0;
    try {
      count = std::stoull(count_text);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "stats TSV line " + std::to_string(line_no) + " has a bad count");
    }
    if (gram.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorKind::InvalidArgument,
                  "stats TSV line " + std::to_string(line_no) + " holds a gram of the wrong length");
    }
    table.add(gram, count);
  }
  if (total) {
    table.set_total_letters(*total);
  } else if (n == 1) {
    table.set_total_letters(table.sum());
  } else {
    throw Error(ErrorKind::InvalidArgument, "stats TSV lacks a total_letters line");
  }
  return table;
}

/// TSV `digraph count support confidence` for one focus letter.
inline void write_association_tsv(std::ostream& out, const NGramTable& digraphs, CodePoint focus,
                                  const std::string& config_echo = {}) {
  detail::write_preamble(out, config_echo);
  out << "# focus: " << utf8::encode(focus) << ' ' << code_point_label(focus) << '\n';
  out << "digraph\tcount\tsupport\tconfidence\n";
  for (const auto& row : associations(digraphs, focus)) {
    out << utf8::encode(row.digraph) << '\t' << row.count << '\t' << detail::fixed6(row.support)
        << '\t' << detail::fixed6(row.confidence) << '\n';
  }
}

}  // namespace layoutforge
