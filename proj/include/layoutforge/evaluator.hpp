#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "error.hpp"
#include "layout.hpp"

namespace layoutforge {

/// Hand-alternation metrics of one layout over one letter stream.
struct EvaluationReport {
  std::string layout_name;
  std::uint64_t hand_switching = 0;
  std::uint64_t left_load = 0;
  std::uint64_t right_load = 0;
  std::uint64_t not_determined = 0;
  std::uint64_t total_letters = 0;

  std::uint64_t determined() const { return left_load + right_load; }

  double switching_per_determined() const {
    return determined() == 0 ? 0.0 : static_cast<double>(hand_switching) / static_cast<double>(determined());
  }

  /// left:right load ratio; infinite when the right hand types nothing.
  double left_right_ratio() const {
    if (right_load == 0) return left_load == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(left_load) / static_cast<double>(right_load);
  }

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

struct EvaluateOptions {
  /// Forget the previous hand at every word boundary.
  bool reset_on_boundary = false;
};

/// Partial evaluation of a contiguous token range, mergeable with its
/// neighbours. The boundary flags mean "a boundary occurs before the first /
/// after the last determined letter" (or anywhere, if none is determined).
struct ChunkSummary {
  EvaluationReport report;
  std::optional<Hand> first;
  std::optional<Hand> last;
  bool boundary_before_first = false;
  bool boundary_after_last = false;
};

inline ChunkSummary summarize(const KeyboardLayout& layout, std::span<const Token> tokens,
                              const EvaluateOptions& options = {}) {
  ChunkSummary s;
  s.report.layout_name = layout.name();
  Hand previous = Hand::Left;
  bool has_previous = false;
  for (Token t : tokens) {
    if (t.is_boundary()) {
      if (!s.first) s.boundary_before_first = true;
      s.boundary_after_last = true;
      if (options.reset_on_boundary) has_previous = false;
      continue;
    }
    ++s.report.total_letters;
    const auto hand = layout.hand_of(t.code_point());
    if (!hand) {
      ++s.report.not_determined;
      continue;
    }
    ++(*hand == Hand::Left ? s.report.left_load : s.report.right_load);
    if (has_previous && previous != *hand) ++s.report.hand_switching;
    previous = *hand;
    has_previous = true;
    if (!s.first) s.first = hand;
    s.last = hand;
    s.boundary_after_last = false;
  }
  return s;
}

/// Associative merge of adjacent chunks (a before b).
inline ChunkSummary merge(const ChunkSummary& a, const ChunkSummary& b, const EvaluateOptions& options = {}) {
  ChunkSummary out;
  out.report.layout_name = a.report.layout_name;
  out.report.hand_switching = a.report.hand_switching + b.report.hand_switching;
  out.report.left_load = a.report.left_load + b.report.left_load;
  out.report.right_load = a.report.right_load + b.report.right_load;
  out.report.not_determined = a.report.not_determined + b.report.not_determined;
  out.report.total_letters = a.report.total_letters + b.report.total_letters;
  const bool separated = options.reset_on_boundary && (a.boundary_after_last || b.boundary_before_first);
  if (a.last && b.first && *a.last != *b.first && !separated) ++out.report.hand_switching;
  out.first = a.first ? a.first : b.first;
  out.boundary_before_first = a.first ? a.boundary_before_first : (a.boundary_before_first || b.boundary_before_first);
  out.last = b.last ? b.last : a.last;
  out.boundary_after_last = b.last ? b.boundary_after_last : (b.boundary_after_last || a.boundary_after_last);
  return out;
}

/// Scans the stream once. A letter with a key adds to its hand's load and
/// counts a switch when its hand differs from the previous determined
/// letter's; unmapped letters and boundaries keep the previous hand unless
/// reset_on_boundary is set.
inline EvaluationReport evaluate(const KeyboardLayout& layout, const LetterStream& stream,
                                 const EvaluateOptions& options = {}) {
  return summarize(layout, stream.tokens(), options).report;
}

/// evaluate() over `chunks` contiguous pieces in parallel.
inline EvaluationReport evaluate_chunked(const KeyboardLayout& layout, const LetterStream& stream,
                                         std::size_t chunks, const EvaluateOptions& options = {}) {
  const std::span<const Token> tokens(stream.tokens());
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(1, tokens.size())));
  std::vector<std::future<ChunkSummary>> jobs;
  for (std::size_t i = 0; i < chunks; ++i) {
    const std::size_t begin = tokens.size() * i / chunks;
    const std::size_t end = tokens.size() * (i + 1) / chunks;
    jobs.push_back(std::async(std::launch::async, [&layout, &options, piece = tokens.subspan(begin, end - begin)] {
      return summarize(layout, piece, options);
    }));
  }
  ChunkSummary total = jobs.front().get();
  for (std::size_t i = 1; i < jobs.size(); ++i) total = merge(total, jobs[i].get(), options);
  return total.report;
}

inline nlohmann::json report_to_json(const EvaluationReport& r,
                                     const nlohmann::json& config = nlohmann::json::object()) {
  const double ratio = r.left_right_ratio();
  return nlohmann::json{{"config", config},
                        {"layout", r.layout_name},
                        {"hand_switching", r.hand_switching},
                        {"left_load", r.left_load},
                        {"right_load", r.right_load},
                        {"not_determined", r.not_determined},
                        {"total_letters", r.total_letters},
                        {"switching_per_determined", r.switching_per_determined()},
                        {"left_right_ratio", std::isfinite(ratio) ? nlohmann::json(ratio) : nlohmann::json()}};
}

inline EvaluationReport report_from_json(const nlohmann::json& j) {
  try {
    EvaluationReport r;
    r.layout_name = j.at("layout").get<std::string>();
    r.hand_switching = j.at("hand_switching").get<std::uint64_t>();
    r.left_load = j.at("left_load").get<std::uint64_t>();
    r.right_load = j.at("right_load").get<std::uint64_t>();
    r.not_determined = j.at("not_determined").get<std::uint64_t>();
    r.total_letters = j.contains("total_letters") ? j.at("total_letters").get<std::uint64_t>()
                                                  : r.left_load + r.right_load + r.not_determined;
    if (r.left_load + r.right_load + r.not_determined != r.total_letters) {
      throw Error(ErrorKind::InvariantViolation,
                  "report for '" + r.layout_name + "' violates left + right + not determined = total");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed report: ") + e.what());
  }
}

namespace detail {

inline std::string ratio_text(double v, int precision = 6) {
  if (!std::isfinite(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace detail

inline void write_report_tsv(std::ostream& out, std::span<const EvaluationReport> reports,
                             const std::string& config_echo = {}) {
  if (!config_echo.empty()) out << "# config: " << config_echo << '\n';
  out << "layout\thand_switching\tleft_load\tright_load\tnot_determined\ttotal_letters"
         "\tswitching_per_determined\tleft_right_ratio\n";
  for (const auto& r : reports) {
    out << r.layout_name << '\t' << r.hand_switching << '\t' << r.left_load << '\t' << r.right_load << '\t'
        << r.not_determined << '\t' << r.total_letters << '\t' << detail::ratio_text(r.switching_per_determined())
        << '\t' << detail::ratio_text(r.left_right_ratio()) << '\n';
  }
}

struct Comparison {
  std::vector<EvaluationReport> rows;  // by hand switching, descending
  std::vector<std::string> warnings;
};

/// Orders reports by hand switching (descending, ties by name) and flags
/// reports that were not computed over the same number of letters.
inline Comparison compare(std::vector<EvaluationReport> reports) {
  if (reports.empty()) throw Error(ErrorKind::EmptyInput, "nothing to compare");
  Comparison c;
  std::stable_sort(reports.begin(), reports.end(), [](const EvaluationReport& a, const EvaluationReport& b) {
    return a.hand_switching != b.hand_switching ? a.hand_switching > b.hand_switching
                                                : a.layout_name < b.layout_name;
  });
  const auto reference = reports.front().total_letters;
  for (const auto& r : reports) {
    if (r.total_letters != reference) {
      c.warnings.push_back("warning: '" + r.layout_name + "' covers " + std::to_string(r.total_letters) +
                           " letters but '" + reports.front().layout_name + "' covers " +
                           std::to_string(reference) + "; reports may come from different corpora");
    }
  }
  c.rows = std::move(reports);
  return c;
}

/// Aligned plain-text table, one row per layout.
inline std::string format_comparison(const Comparison& c) {
  const std::vector<std::string> header{"Name",           "Hand switching",    "Left hand load", "Right hand load",
                                        "Not determined", "Switch/determined", "Left:right"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& r : c.rows) {
    cells.push_back({r.layout_name, std::to_string(r.hand_switching), std::to_string(r.left_load),
                     std::to_string(r.right_load), std::to_string(r.not_determined),
                     detail::ratio_text(r.switching_per_determined(), 4), detail::ratio_text(r.left_right_ratio(), 4)});
  }
  const auto width = [](const std::string& s) {
    try {
      return utf8::decode(s).size();
    } catch (const Error&) {
      return s.size();
    }
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      const auto pad = std::string(widths[i] - width(cells[r][i]), ' ');
      if (i == 0) {
        out << cells[r][i] << pad;
      } else {
        out << "  " << pad << cells[r][i];
      }
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w;
      out << std::string(total + 2 * (widths.size() - 1), '-') << '\n';
    }
  }
  for (const auto& w : c.warnings) out << w << '\n';
  return out.str();
}

}  // namespace layoutforge
