#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "error.hpp"
#include "evaluator.hpp"
#include "layout.hpp"
#include "partition.hpp"
#include "stats.hpp"

namespace layoutforge {

namespace fs = std::filesystem;

/// Settings shared by every pipeline stage. Defaults are the literal
/// algorithm: no spanning, no balancing, no resets, every letter covered.
struct PipelineConfig {
  std::optional<fs::path> alphabet_path;
  std::optional<fs::path> geometry_path;
  std::uint64_t coverage = 1;
  bool balance_tiebreak = false;
  bool reset_on_boundary = false;
  bool span_boundaries = false;
  fs::path out_dir = ".";

  AlphabetConfig alphabet() const { return alphabet_path ? load_alphabet(*alphabet_path) : AlphabetConfig::bangla(); }

  Geometry geometry() const {
    if (!geometry_path) return Geometry::standard();
    const auto text = read_file(*geometry_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Config, geometry_path->string() + ": " + e.what(), e.byte);
    }
    return geometry_from_json(j, geometry_path->string());
  }

  PartitionOptions partition_options() const {
    PartitionOptions o;
    o.balance_tiebreak = balance_tiebreak;
    o.min_count = coverage;
    return o;
  }

  /// Provenance echo. Output directory and input paths are left out so the
  /// same run written elsewhere, or fed files in another order, is
  /// byte-identical.
  nlohmann::json echo() const {
    return nlohmann::json{{"alphabet", alphabet_path ? alphabet_path->string() : std::string("builtin:bangla")},
                          {"geometry", geometry_path ? geometry_path->string() : std::string("builtin:standard")},
                          {"coverage", coverage},
                          {"balance_tiebreak", balance_tiebreak},
                          {"reset_on_boundary", reset_on_boundary},
                          {"span_boundaries", span_boundaries}};
  }

  /// Overlays keys present in a JSON config file.
  void apply_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Config, "pipeline config must be a JSON object");
    try {
      if (j.contains("alphabet")) alphabet_path = j.at("alphabet").get<std::string>();
      if (j.contains("geometry")) geometry_path = j.at("geometry").get<std::string>();
      if (j.contains("coverage")) coverage = j.at("coverage").get<std::uint64_t>();
      if (j.contains("balance_tiebreak")) balance_tiebreak = j.at("balance_tiebreak").get<bool>();
      if (j.contains("reset_on_boundary")) reset_on_boundary = j.at("reset_on_boundary").get<bool>();
      if (j.contains("span_boundaries")) span_boundaries = j.at("span_boundaries").get<bool>();
      if (j.contains("out")) out_dir = j.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Config, std::string("bad pipeline config: ") + e.what());
    }
  }

  void load_file(const fs::path& path) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Config, path.string() + ": " + e.what(), e.byte);
    }
    // Relative paths inside a config file are relative to that file.
    apply_json(j);
    const auto base = path.parent_path();
    if (j.contains("alphabet") && alphabet_path->is_relative()) alphabet_path = base / *alphabet_path;
    if (j.contains("geometry") && geometry_path->is_relative()) geometry_path = base / *geometry_path;
  }
};

inline void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

inline nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, path.string() + ": " + e.what(), e.byte);
  }
}

/// Corpus files in canonical (lexicographic) order, one stream per file;
/// "-" reads standard input.
inline std::vector<LetterStream> load_corpus(std::vector<fs::path> inputs, const AlphabetConfig& alphabet) {
  if (inputs.empty()) throw Error(ErrorKind::InvalidArgument, "no corpus input given");
  std::sort(inputs.begin(), inputs.end());
  std::vector<LetterStream> streams;
  std::vector<fs::path> files;
  for (const auto& p : inputs) {
    if (p == "-") {
      std::string raw(std::istreambuf_iterator<char>(std::cin), {});
      streams.push_back(ingest(raw, alphabet));
    } else {
      if (!fs::exists(p)) throw Error(ErrorKind::Io, "cannot read " + p.string() + ": no such file");
      files.push_back(p);
    }
  }
  auto from_files = ingest_each(files, alphabet);
  streams.insert(streams.end(), std::make_move_iterator(from_files.begin()), std::make_move_iterator(from_files.end()));
  return streams;
}

struct CorpusTables {
  NGramTable mono{1};
  NGramTable di{2};
  NGramTable tri{3};
};

/// Per-file counts merged; windows never cross a file junction.
inline CorpusTables count_corpus(const std::vector<LetterStream>& streams, const PipelineConfig& config) {
  CorpusTables t;
  const CountOptions options{config.span_boundaries};
  for (const auto& s : streams) {
    t.mono += count_ngrams(s, 1, options);
    t.di += count_ngrams(s, 2, options);
    t.tri += count_ngrams(s, 3, options);
  }
  if (t.mono.total_letters() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  return t;
}

inline std::string table_tsv(const NGramTable& table, const PipelineConfig& config) {
  std::ostringstream out;
  write_table_tsv(out, table, config.echo().dump());
  return out.str();
}

/// stats: monograms.tsv, digraphs.tsv, trigraphs.tsv, summary.json and, per
/// focus letter, association-U+XXXX.tsv.
inline CorpusTables run_stats(const std::vector<fs::path>& inputs, const PipelineConfig& config,
                              const std::vector<CodePoint>& focus = {}) {
  const auto tables = count_corpus(load_corpus(inputs, config.alphabet()), config);
  const auto& dir = config.out_dir;
  write_text(dir / "monograms.tsv", table_tsv(tables.mono, config));
  write_text(dir / "digraphs.tsv", table_tsv(tables.di, config));
  write_text(dir / "trigraphs.tsv", table_tsv(tables.tri, config));
  const nlohmann::json summary{{"config", config.echo()},
                               {"total_letters", tables.mono.total_letters()},
                               {"distinct_letters", tables.mono.size()},
                               {"distinct_digraphs", tables.di.size()},
                               {"distinct_trigraphs", tables.tri.size()}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  for (CodePoint c : focus) {
    std::ostringstream out;
    write_association_tsv(out, tables.di, c, config.echo().dump());
    write_text(dir / ("association-" + code_point_label(c) + ".tsv"), out.str());
  }
  return tables;
}

/// Reads monograms.tsv and digraphs.tsv back from a stats directory.
inline CorpusTables read_stats_dir(const fs::path& dir) {
  CorpusTables t;
  for (auto [name, n] : {std::pair{"monograms.tsv", 1}, std::pair{"digraphs.tsv", 2}}) {
    std::istringstream in(read_file(dir / name));
    (n == 1 ? t.mono : t.di) = read_table_tsv(in, n);
  }
  if (t.mono.total_letters() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  return t;
}

inline HandPartition write_partition(const CorpusTables& tables, const PipelineConfig& config) {
  const auto partition = partition_all(tables.mono, tables.di, config.partition_options());
  write_text(config.out_dir / "partition.json",
             partition_to_json(partition, tables.mono, config.echo()).dump(2) + "\n");
  return partition;
}

inline KeyboardLayout run_layout(const fs::path& partition_path, const PipelineConfig& config,
                                 const std::string& name = "generated") {
  const auto file = partition_from_json(read_json(partition_path));
  auto layout = build_layout(file.partition, file.mono, config.geometry(), name);
  layout.set_config(config.echo());
  write_text(config.out_dir / "layout.json", serialize_layout(layout));
  return layout;
}

inline std::string report_file_name(const std::string& layout_name) {
  std::string safe;
  for (unsigned char ch : layout_name) {
    safe.push_back(std::isalnum(ch) || ch == '-' || ch == '_' || ch == '.' ? static_cast<char>(ch) : '_');
  }
  return "report-" + safe + ".json";
}

inline KeyboardLayout load_layout(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorKind::Io, "cannot read layout " + path.string() + ": no such file");
  try {
    return parse_layout(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what(), e.position());
  }
}

/// Evaluates each layout over the concatenated corpus. Writes one JSON
/// report per layout plus reports.tsv.
inline std::vector<EvaluationReport> run_evaluate(const std::vector<fs::path>& layout_paths,
                                                  const std::vector<fs::path>& inputs,
                                                  const PipelineConfig& config) {
  if (layout_paths.empty()) throw Error(ErrorKind::InvalidArgument, "no layout given");
  std::vector<KeyboardLayout> layouts;
  std::set<std::string> names;
  for (const auto& p : layout_paths) {
    layouts.push_back(load_layout(p));
    if (!names.insert(report_file_name(layouts.back().name())).second) {
      throw Error(ErrorKind::InvalidArgument, "two layouts share the name '" + layouts.back().name() + "'");
    }
  }
  const auto stream = concatenate(load_corpus(inputs, config.alphabet()));
  if (stream.letter_count() == 0) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  const EvaluateOptions options{config.reset_on_boundary};
  std::vector<EvaluationReport> reports;
  for (const auto& layout : layouts) {
    reports.push_back(evaluate(layout, stream, options));
    write_text(config.out_dir / report_file_name(layout.name()),
               report_to_json(reports.back(), config.echo()).dump(2) + "\n");
  }
  std::ostringstream tsv;
  write_report_tsv(tsv, reports, config.echo().dump());
  write_text(config.out_dir / "reports.tsv", tsv.str());
  return reports;
}

inline std::string run_compare(const std::vector<fs::path>& report_paths) {
  std::vector<EvaluationReport> reports;
  for (const auto& p : report_paths) {
    if (!fs::exists(p)) throw Error(ErrorKind::Io, "cannot read report " + p.string() + ": no such file");
    reports.push_back(report_from_json(read_json(p)));
  }
  return format_comparison(compare(std::move(reports)));
}

/// stats -> partition -> layout -> evaluate (generated layout plus any
/// baselines) -> comparison.txt. Returns the comparison table.
inline std::string run_all(const std::vector<fs::path>& inputs, const PipelineConfig& config,
                           const std::vector<fs::path>& baselines = {}) {
  PipelineConfig stats_config = config;
  stats_config.out_dir = config.out_dir / "stats";
  const auto tables = run_stats(inputs, stats_config);
  write_partition(tables, config);
  run_layout(config.out_dir / "partition.json", config);
  std::vector<fs::path> layouts{config.out_dir / "layout.json"};
  layouts.insert(layouts.end(), baselines.begin(), baselines.end());
  const auto reports = run_evaluate(layouts, inputs, config);
  const auto table = format_comparison(compare(reports));
  write_text(config.out_dir / "comparison.txt", table);
  return table;
}

}  // namespace layoutforge
