// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pats/types.hpp"

namespace pats {

// Accuracy is a fraction in [0, 1]; reports print it as a percentage.
struct BenchmarkResult {
  std::string benchmark;
  std::string strategy;
  double accuracy = 0.0;
  double avg_tokens = 0.0;
  int n_problems = 0;

  bool operator==(const BenchmarkResult&) const = default;
};

// Unweighted mean over benchmarks for one strategy.
struct MacroAverage {
  std::string strategy;
  double accuracy = 0.0;
  double avg_tokens = 0.0;
  int n_benchmarks = 0;

  bool operator==(const MacroAverage&) const = default;
};

struct AggregateReport {
  // Sorted by (strategy, benchmark).
  std::vector<BenchmarkResult> results;
  // Sorted by strategy.
  std::vector<MacroAverage> averages;
};

// Groups traces by (benchmark, strategy). Throws std::invalid_argument when
// called with no traces.
AggregateReport aggregate(std::span<const ReasoningTrace> traces);

// One macro-average row per strategy present in `results`.
std::vector<MacroAverage> macro_average(std::span<const BenchmarkResult> results);

// Mode proportions per stage, indexed by mode_index(). A stage with no steps
// has count 0 and all-zero proportions.
struct StageDistribution {
  std::vector<std::array<double, 3>> proportions;
  std::vector<std::size_t> counts;

  std::size_t num_stages() const { return proportions.size(); }
};

// 0-based stage of 1-based step `index` in a trace of n steps:
// min(floor(num_stages * (index - 1) / n), num_stages - 1).
std::size_t stage_of(int index, int n_steps, std::size_t num_stages);

// Pools steps of every (optionally only correct) trace into normalized stages.
// Throws std::invalid_argument if no trace survives the filter.
StageDistribution stage_distribution(std::span<const ReasoningTrace> traces,
                                     std::size_t num_stages = 5,
                                     bool only_correct = true);

// Table with one row per strategy and Acc/Token column pairs per benchmark,
// followed by the Average pair.
struct ComparisonTable {
  std::vector<std::string> benchmarks;
  std::vector<std::string> strategies;
  // cells[s][b]
  std::vector<std::vector<BenchmarkResult>> cells;
  std::vector<MacroAverage> averages;

  std::size_t columns() const { return 2 * benchmarks.size() + 2; }
  std::string render_text() const;
  // One JSON object per (benchmark, strategy) and per average row.
  std::string render_jsonl() const;
};

// Throws std::invalid_argument naming the strategy and the benchmark it lacks
// when the strategies do not cover the same benchmark set.
ComparisonTable compare_report(std::span<const BenchmarkResult> results);

}  // namespace pats
