// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// pats: run adaptive guided-search experiments and analyze their traces.
//
//   pats run --config run.json [--seed N] [--parallelism N] [--out DIR]
//   pats analyze traces/*.jsonl [--stages 5] [--only-correct true] [--out DIR]
//   pats compare a/report.jsonl b/report.jsonl [--out DIR]

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pats/commands.hpp"
#include "pats/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Process-level adaptive thinking mode switching"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run every strategy over every benchmark");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallelism;
  std::optional<std::string> run_out;
  run->add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the run seed");
  run->add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", run_out, "Output directory");

  auto* analyze = app.add_subcommand("analyze", "Aggregate trace files into a report");
  std::vector<std::string> trace_paths;
  std::size_t stages = 5;
  bool only_correct = true;
  std::string analyze_out = ".";
  analyze->add_option("traces", trace_paths, "Trace files (.jsonl)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--stages", stages, "Number of normalized stages")->check(CLI::PositiveNumber);
  analyze->add_option("--only-correct", only_correct, "Restrict stage analysis to correct episodes");
  analyze->add_option("--out", analyze_out, "Output directory");

  auto* compare = app.add_subcommand("compare", "Side-by-side table of several reports");
  std::vector<std::string> report_paths;
  std::string compare_out = ".";
  compare->add_option("reports", report_paths, "report.jsonl files")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", compare_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      pats::RunConfig cfg = pats::load_run_config(config_path);
      if (seed) cfg.seed = *seed;
      if (parallelism) cfg.parallelism = *parallelism;
      if (run_out) cfg.output_dir = *run_out;
      const auto outcome = pats::run_command(cfg);
      for (const auto& f : outcome.failures) {
        std::cerr << "episode failed: " << f.strategy << " / " << f.problem_id << ": "
                  << f.message << "\n";
      }
      std::cout << "wrote " << outcome.trace_files.size() << " trace files to "
                << cfg.output_dir.string() << "\n";
      std::ifstream report(cfg.output_dir / "report.txt");
      if (report) std::cout << report.rdbuf();
      return outcome.exit_status();
    }
    if (*analyze) {
      std::vector<std::filesystem::path> paths(trace_paths.begin(), trace_paths.end());
      pats::AnalyzeOptions options{stages, only_correct, analyze_out};
      pats::analyze_command(paths, options);
      std::ifstream report(std::filesystem::path(analyze_out) / "report.txt");
      std::cout << report.rdbuf();
      return 0;
    }
    if (*compare) {
      std::vector<std::filesystem::path> paths(report_paths.begin(), report_paths.end());
      const auto table = pats::compare_command(paths, compare_out);
      std::cout << table.render_text();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "pats: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
