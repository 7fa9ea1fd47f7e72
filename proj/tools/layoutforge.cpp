// layoutforge: corpus statistics, hand partitioning, layout generation and
// layout evaluation.
//
// Exit codes: 0 success, 2 user/input error, 1 internal error. Failures
// print one line to stderr: `error: kind=<Kind> message="<text>"`.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "layoutforge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace layoutforge;

namespace {

struct Flags {
  std::string config;
  std::string alphabet;
  std::string geometry;
  std::string out;
  std::uint64_t coverage = 0;
  bool balance_tiebreak = false;
  bool reset_on_boundary = false;
  bool span_boundaries = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Pipeline config JSON (default: $LAYOUTFORGE_CONFIG)");
  cmd->add_option("--alphabet", f.alphabet, "Alphabet config JSON");
  cmd->add_option("--geometry", f.geometry, "Keyboard geometry JSON");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--coverage", f.coverage, "Drop letters seen fewer than this many times");
  cmd->add_flag("--balance-tiebreak", f.balance_tiebreak, "Send undecided letters to the lighter hand");
  cmd->add_flag("--reset-on-boundary", f.reset_on_boundary, "Forget the previous hand at word boundaries");
  cmd->add_flag("--span-boundaries", f.span_boundaries, "Count n-grams across word boundaries");
}

PipelineConfig resolve(const Flags& f) {
  PipelineConfig config;
  std::string config_path = f.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("LAYOUTFORGE_CONFIG"); env != nullptr) config_path = env;
  }
  if (!config_path.empty()) config.load_file(config_path);
  if (!f.alphabet.empty()) config.alphabet_path = f.alphabet;
  if (!f.geometry.empty()) config.geometry_path = f.geometry;
  if (!f.out.empty()) config.out_dir = f.out;
  if (f.coverage > 0) config.coverage = f.coverage;
  config.balance_tiebreak = config.balance_tiebreak || f.balance_tiebreak;
  config.reset_on_boundary = config.reset_on_boundary || f.reset_on_boundary;
  config.span_boundaries = config.span_boundaries || f.span_boundaries;
  return config;
}

std::vector<fs::path> as_paths(const std::vector<std::string>& in) { return {in.begin(), in.end()}; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ' ' : c);
  }
  return out;
}

int fail(std::string_view kind, const std::string& message, int code) {
  std::cerr << "error: kind=" << kind << " message=\"" << escape(message) << "\"\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus-driven keyboard layout optimizer"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<std::string> inputs;
  std::vector<std::string> focus;
  auto* stats = app.add_subcommand("stats", "Count monograms, digraphs and trigraphs");
  stats->add_option("inputs", inputs, "Corpus files ('-' for stdin)")->required();
  stats->add_option("--focus", focus, "Also export digraph associations for this letter (repeatable)")
      ->allow_extra_args(false);
  add_common(stats, flags);

  std::string stats_dir;
  auto* partition = app.add_subcommand("partition", "Split letters between the hands");
  partition->add_option("inputs", inputs, "Corpus files ('-' for stdin)");
  partition->add_option("--stats", stats_dir, "Read monograms.tsv/digraphs.tsv from this directory instead");
  add_common(partition, flags);

  std::string partition_file;
  std::string layout_name = "generated";
  auto* layout = app.add_subcommand("layout", "Place a partition onto a keyboard geometry");
  layout->add_option("partition", partition_file, "Partition JSON")->required();
  layout->add_option("--name", layout_name, "Layout name");
  add_common(layout, flags);

  std::vector<std::string> layouts;
  auto* evaluate = app.add_subcommand("evaluate", "Score layouts against a corpus");
  evaluate->add_option("--layout", layouts, "Layout JSON (repeatable)")
      ->required()
      ->allow_extra_args(false);
  evaluate->add_option("inputs", inputs, "Corpus files ('-' for stdin)")->required();
  add_common(evaluate, flags);

  std::vector<std::string> reports;
  auto* compare = app.add_subcommand("compare", "Print a comparison table of reports");
  compare->add_option("reports", reports, "Report JSON files")->required();

  std::vector<std::string> baselines;
  auto* run_all = app.add_subcommand("run-all", "stats, partition, layout, evaluate and compare");
  run_all->add_option("inputs", inputs, "Corpus files ('-' for stdin)")->required();
  run_all->add_option("--baseline", baselines, "Extra layout JSON to evaluate alongside (repeatable)")
      ->allow_extra_args(false);
  add_common(run_all, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("Usage", e.what(), 2);
  }

  try {
    if (stats->parsed()) {
      const auto config = resolve(flags);
      std::vector<CodePoint> letters;
      for (const auto& f : focus) letters.push_back(single_code_point(f));
      const auto tables = run_stats(as_paths(inputs), config, letters);
      std::cout << "total letters: " << tables.mono.total_letters() << "\n"
                << "distinct letters: " << tables.mono.size() << "\n";
    } else if (partition->parsed()) {
      const auto config = resolve(flags);
      if (stats_dir.empty() == inputs.empty()) {
        return fail("Usage", "give either corpus inputs or --stats <dir>", 2);
      }
      const auto tables = stats_dir.empty() ? count_corpus(load_corpus(as_paths(inputs), config.alphabet()), config)
                                            : read_stats_dir(stats_dir);
      const auto p = write_partition(tables, config);
      std::cout << "left: " << p.left().size() << " letters, right: " << p.right().size() << " letters\n";
    } else if (layout->parsed()) {
      const auto config = resolve(flags);
      if (!fs::exists(partition_file)) {
        return fail(to_string(ErrorKind::Io), "cannot read partition " + partition_file + ": no such file", 2);
      }
      const auto l = run_layout(partition_file, config, layout_name);
      std::cout << "placed " << l.size() << " letters\n";
    } else if (evaluate->parsed()) {
      const auto config = resolve(flags);
      const auto rs = run_evaluate(as_paths(layouts), as_paths(inputs), config);
      write_report_tsv(std::cout, rs);
    } else if (compare->parsed()) {
      std::cout << run_compare(as_paths(reports));
    } else if (run_all->parsed()) {
      const auto config = resolve(flags);
      std::cout << layoutforge::run_all(as_paths(inputs), config, as_paths(baselines));
    }
  } catch (const Error& e) {
    return fail(to_string(e.kind()), e.what(), 2);
  } catch (const fs::filesystem_error& e) {
    return fail(to_string(ErrorKind::Io), e.what(), 2);
  } catch (const std::exception& e) {
    return fail("Internal", e.what(), 1);
  }
  return 0;
}
