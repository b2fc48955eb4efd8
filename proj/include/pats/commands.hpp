// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pats/analysis.hpp"
#include "pats/run_config.hpp"
#include "pats/types.hpp"

namespace pats {

struct EpisodeFailure {
  std::string strategy;
  std::string problem_id;
  std::string message;
};

struct RunOutcome {
  // Keyed by strategy name; each list sorted by (problem_id, benchmark).
  std::map<std::string, std::vector<ReasoningTrace>> traces;
  std::vector<EpisodeFailure> failures;
  std::vector<std::filesystem::path> trace_files;

  int exit_status() const { return failures.empty() ? 0 : 1; }
};

// Runs every (strategy x problem) episode on `config.parallelism` workers and
// writes <out>/traces/<strategy>.jsonl, <out>/report.{txt,jsonl} and
// <out>/manifest.json. Trace contents do not depend on parallelism.
RunOutcome run_command(const RunConfig& config);

struct AnalyzeOptions {
  std::size_t num_stages = 5;
  bool only_correct = true;
  std::filesystem::path output_dir = ".";
};

// Reads trace files and writes report.{txt,jsonl} into options.output_dir.
// Throws std::invalid_argument on empty input.
AggregateReport analyze_command(
    const std::vector<std::filesystem::path>& trace_paths,
    const AnalyzeOptions& options);

// Merges the result records of several report.jsonl files into one
// comparison, written as comparison.{txt,jsonl} into `output_dir`.
ComparisonTable compare_command(
    const std::vector<std::filesystem::path>& report_paths,
    const std::filesystem::path& output_dir);

}  // namespace pats
