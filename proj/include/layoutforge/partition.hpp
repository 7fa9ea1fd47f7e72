#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "stats.hpp"
#include "unicode.hpp"

namespace layoutforge {

enum class Hand { Left, Right };

constexpr std::string_view to_string(Hand hand) { return hand == Hand::Left ? "left" : "right"; }

inline Hand parse_hand(std::string_view text) {
  if (text == "left") return Hand::Left;
  if (text == "right") return Hand::Right;
  throw Error(ErrorKind::InvalidArgument, "hand must be \"left\" or \"right\", got '" + std::string(text) + "'");
}

constexpr Hand opposite(Hand hand) { return hand == Hand::Left ? Hand::Right : Hand::Left; }

/// Why a letter went where it did.
enum class Rule {
  InitRight,         // 1st or 4th most frequent letter
  InitLeft,          // 2nd or 3rd most frequent letter
  LeftAssociation,   // left support and confidence both strictly larger: goes right
  Otherwise,         // every other case: goes left
  RightAssociation,  // balance mode only: right strictly larger on both, goes left
  BalanceLighter,    // balance mode only: undecided, goes to the lighter hand
  Degenerate,        // fewer than four letters, alternating right/left
};

constexpr std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::InitRight: return "init-right";
    case Rule::InitLeft: return "init-left";
    case Rule::LeftAssociation: return "left-association";
    case Rule::Otherwise: return "otherwise";
    case Rule::RightAssociation: return "right-association";
    case Rule::BalanceLighter: return "balance-lighter";
    case Rule::Degenerate: return "degenerate";
  }
  return "unknown";
}

inline Rule parse_rule(std::string_view text) {
  for (Rule r : {Rule::InitRight, Rule::InitLeft, Rule::LeftAssociation, Rule::Otherwise,
                 Rule::RightAssociation, Rule::BalanceLighter, Rule::Degenerate}) {
    if (to_string(r) == text) return r;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown partition rule '" + std::string(text) + "'");
}

struct Decision {
  CodePoint letter = 0;
  SideScore left;
  SideScore right;
  Hand hand = Hand::Left;
  Rule rule = Rule::Otherwise;
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct PartitionOptions {
  /// Send undecided letters to the lighter hand and mirror the placement rule.
  bool balance_tiebreak = false;
  /// Accept fewer than four letters instead of raising TooFewLetters.
  bool allow_degenerate = false;
  /// Letters with a smaller monogram count are left out of the ranking.
  std::uint64_t min_count = 1;
};

/// Disjoint left/right letter sets in assignment order, plus the decision
/// trace that produced them.
class HandPartition {
 public:
  const std::vector<CodePoint>& left() const { return left_; }
  const std::vector<CodePoint>& right() const { return right_; }
  const std::vector<CodePoint>& side(Hand hand) const { return hand == Hand::Left ? left_ : right_; }
  const std::vector<Decision>& trace() const { return trace_; }
  bool degenerate() const { return degenerate_; }
  std::size_t size() const { return trace_.size(); }

  std::optional<Hand> hand_of(CodePoint letter) const {
    for (const auto& d : trace_) {
      if (d.letter == letter) return d.hand;
    }
    return std::nullopt;
  }

  bool contains(CodePoint letter) const { return hand_of(letter).has_value(); }

  void record(const Decision& decision) {
    if (contains(decision.letter)) {
      throw Error(ErrorKind::AlreadyAssigned,
                  "letter " + code_point_label(decision.letter) + " is already assigned");
    }
    (decision.hand == Hand::Left ? left_ : right_).push_back(decision.letter);
    trace_.push_back(decision);
    if (decision.rule == Rule::Degenerate) degenerate_ = true;
  }

  /// Rebuilds a partition from its trace alone.
  static HandPartition replay(std::span<const Decision> trace) {
    HandPartition p;
    for (const auto& d : trace) p.record(d);
    return p;
  }

  friend bool operator==(const HandPartition&, const HandPartition&) = default;

 private:
  std::vector<CodePoint> left_;
  std::vector<CodePoint> right_;
  std::vector<Decision> trace_;
  bool degenerate_ = false;
};

/// The placement rule. Strict on both comparisons: only a letter more
/// associated with the left set on support AND confidence goes right.
inline std::pair<Hand, Rule> decide(const SideScore& left, const SideScore& right,
                                    const PartitionOptions& options = {},
                                    std::uint64_t left_load = 0, std::uint64_t right_load = 0) {
  if (left.support > right.support && left.confidence > right.confidence) {
    return {Hand::Right, Rule::LeftAssociation};
  }
  if (!options.balance_tiebreak) return {Hand::Left, Rule::Otherwise};
  if (right.support > left.support && right.confidence > left.confidence) {
    return {Hand::Left, Rule::RightAssociation};
  }
  return {right_load < left_load ? Hand::Right : Hand::Left, Rule::BalanceLighter};
}

/// Ranks 1 and 4 go right, ranks 2 and 3 go left.
inline HandPartition initialize(std::span<const RankedLetter> ranking,
                                const PartitionOptions& options = {}) {
  HandPartition p;
  if (ranking.size() < 4) {
    if (!options.allow_degenerate) {
      throw Error(ErrorKind::TooFewLetters, "need at least 4 distinct letters, got " +
                                                std::to_string(ranking.size()));
    }
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      p.record({ranking[i].letter, {}, {}, i % 2 == 0 ? Hand::Right : Hand::Left, Rule::Degenerate});
    }
    return p;
  }
  constexpr Hand initial[4] = {Hand::Right, Hand::Left, Hand::Left, Hand::Right};
  for (std::size_t i = 0; i < 4; ++i) {
    p.record({ranking[i].letter, {}, {}, initial[i],
              initial[i] == Hand::Right ? Rule::InitRight : Rule::InitLeft});
  }
  return p;
}

namespace detail {

inline std::uint64_t hand_load(const HandPartition& p, Hand hand, const NGramTable& mono) {
  std::uint64_t load = 0;
  for (CodePoint c : p.side(hand)) load += mono.count(Gram(1, c));
  return load;
}

}  // namespace detail

/// Scores `letter` against the current left and right sets and records the
/// decision.
inline void assign(CodePoint letter, HandPartition& partition, const NGramTable& mono,
                   const NGramTable& digraphs, const PartitionOptions& options = {}) {
  if (partition.contains(letter)) {
    throw Error(ErrorKind::AlreadyAssigned, "letter " + code_point_label(letter) + " is already assigned");
  }
  Decision d;
  d.letter = letter;
  d.left = side_scores(letter, partition.left(), mono, digraphs);
  d.right = side_scores(letter, partition.right(), mono, digraphs);
  std::uint64_t left_load = 0;
  std::uint64_t right_load = 0;
  if (options.balance_tiebreak) {
    left_load = detail::hand_load(partition, Hand::Left, mono);
    right_load = detail::hand_load(partition, Hand::Right, mono);
  }
  std::tie(d.hand, d.rule) = decide(d.left, d.right, options, left_load, right_load);
  partition.record(d);
}

/// Ranking restricted to letters at or above the coverage cutoff.
inline std::vector<RankedLetter> covered_ranking(const NGramTable& mono, std::uint64_t min_count) {
  auto ranking = ranked_monograms(mono);
  std::erase_if(ranking, [min_count](const RankedLetter& r) { return r.count < min_count; });
  return ranking;
}

/// Initializes from the top four letters, then assigns the rest one by one in
/// ranking order.
inline HandPartition partition_all(const NGramTable& mono, const NGramTable& digraphs,
                                   const PartitionOptions& options = {}) {
  const auto ranking = covered_ranking(mono, options.min_count);
  auto p = initialize(ranking, options);
  for (std::size_t i = p.size(); i < ranking.size(); ++i) {
    assign(ranking[i].letter, p, mono, digraphs, options);
  }
  return p;
}

inline nlohmann::json letter_json(CodePoint cp) {
  return nlohmann::json{{"letter", utf8::encode(cp)}, {"code_point", code_point_label(cp)}};
}

/// Reads {"letter": "ক", "code_point": "U+0995"}; the annotation, when
/// present, must agree with the literal.
inline CodePoint letter_from_json(const nlohmann::json& j) {
  if (j.is_string()) return single_code_point(j.get<std::string>());
  if (!j.is_object() || !j.contains("letter") || !j.at("letter").is_string()) {
    throw Error(ErrorKind::InvalidArgument, "letter entry needs a \"letter\" string");
  }
  const auto cp = single_code_point(j.at("letter").get<std::string>());
  if (j.contains("code_point") && parse_code_point_label(j.at("code_point").get<std::string>()) != cp) {
    throw Error(ErrorKind::InvalidArgument,
                "letter and code_point disagree for " + code_point_label(cp));
  }
  return cp;
}

/// Partition file: sets, full trace, and the monogram counts the layout
/// stage needs for placement.
inline nlohmann::json partition_to_json(const HandPartition& p, const NGramTable& mono,
                                        const nlohmann::json& config = nlohmann::json::object()) {
  auto side = [](const std::vector<CodePoint>& letters) {
    auto arr = nlohmann::json::array();
    for (CodePoint c : letters) arr.push_back(letter_json(c));
    return arr;
  };
  auto trace = nlohmann::json::array();
  for (const auto& d : p.trace()) {
    auto entry = letter_json(d.letter);
    entry["left"] = {{"support", d.left.support}, {"confidence", d.left.confidence}};
    entry["right"] = {{"support", d.right.support}, {"confidence", d.right.confidence}};
    entry["hand"] = to_string(d.hand);
    entry["rule"] = to_string(d.rule);
    trace.push_back(std::move(entry));
  }
  auto freqs = nlohmann::json::array();
  for (const auto& r : ranked_monograms(mono)) {
    auto entry = letter_json(r.letter);
    entry["count"] = r.count;
    freqs.push_back(std::move(entry));
  }
  return nlohmann::json{{"config", config},
                        {"degenerate", p.degenerate()},
                        {"left", side(p.left())},
                        {"right", side(p.right())},
                        {"trace", trace},
                        {"total_letters", mono.total_letters()},
                        {"monograms", freqs}};
}

struct PartitionFile {
  HandPartition partition;
  NGramTable mono{1};
};

/// Parses a partition file and checks that `left`/`right` match the trace.
inline PartitionFile partition_from_json(const nlohmann::json& j) {
  try {
    PartitionFile file;
    std::vector<Decision> trace;
    for (const auto& e : j.at("trace")) {
      Decision d;
      d.letter = letter_from_json(e);
      d.left = {e.at("left").at("support").get<double>(), e.at("left").at("confidence").get<double>()};
      d.right = {e.at("right").at("support").get<double>(), e.at("right").at("confidence").get<double>()};
      d.hand = parse_hand(e.at("hand").get<std::string>());
      d.rule = parse_rule(e.at("rule").get<std::string>());
      trace.push_back(d);
    }
    file.partition = HandPartition::replay(trace);
    auto listed = [&](const char* key) {
      std::vector<CodePoint> out;
      for (const auto& e : j.at(key)) out.push_back(letter_from_json(e));
      return out;
    };
    if (listed("left") != file.partition.left() || listed("right") != file.partition.right()) {
      throw Error(ErrorKind::InvariantViolation, "partition sets disagree with the trace");
    }
    for (const auto& e : j.at("monograms")) {
      file.mono.add(Gram(1, letter_from_json(e)), e.at("count").get<std::uint64_t>());
    }
    file.mono.set_total_letters(j.at("total_letters").get<std::uint64_t>());
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed partition file: ") + e.what());
  }
}

}  // namespace layoutforge
