// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace pats {

namespace {

struct Tally {
  std::int64_t correct = 0;
  double tokens = 0.0;
  int n = 0;
};

std::string pct(double fraction) { return fmt::format("{:.1f}", 100.0 * fraction); }
std::string tok(double tokens) { return fmt::format("{:.1f}", tokens); }

}  // namespace

AggregateReport aggregate(std::span<const ReasoningTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  std::map<std::pair<std::string, std::string>, Tally> groups;
  for (const auto& t : traces) {
    Tally& g = groups[{t.strategy_name, t.benchmark}];
    g.correct += t.correct ? 1 : 0;
    g.tokens += static_cast<double>(t.total_tokens);
    ++g.n;
  }
  AggregateReport report;
  for (const auto& [key, g] : groups) {
    BenchmarkResult r;
    r.strategy = key.first;
    r.benchmark = key.second;
    r.n_problems = g.n;
    r.accuracy = static_cast<double>(g.correct) / g.n;
    r.avg_tokens = g.tokens / g.n;
    report.results.push_back(std::move(r));
  }
  report.averages = macro_average(report.results);
  return report;
}

std::vector<MacroAverage> macro_average(std::span<const BenchmarkResult> results) {
  std::map<std::string, MacroAverage> by_strategy;
  for (const auto& r : results) {
    MacroAverage& m = by_strategy[r.strategy];
    m.strategy = r.strategy;
    m.accuracy += r.accuracy;
    m.avg_tokens += r.avg_tokens;
    ++m.n_benchmarks;
  }
  std::vector<MacroAverage> out;
  for (auto& [name, m] : by_strategy) {
    m.accuracy /= m.n_benchmarks;
    m.avg_tokens /= m.n_benchmarks;
    out.push_back(m);
  }
  return out;
}

std::size_t stage_of(int index, int n_steps, std::size_t num_stages) {
  if (n_steps < 1 || index < 1 || index > n_steps || num_stages == 0) {
    throw std::invalid_argument(
        fmt::format("stage_of: step {} of {} with {} stages", index, n_steps, num_stages));
  }
  const auto stage = num_stages * static_cast<std::size_t>(index - 1) /
                     static_cast<std::size_t>(n_steps);
  return std::min(stage, num_stages - 1);
}

StageDistribution stage_distribution(std::span<const ReasoningTrace> traces,
                                     std::size_t num_stages, bool only_correct) {
  if (num_stages == 0) throw std::invalid_argument("num_stages must be >= 1");
  std::vector<std::array<std::size_t, 3>> counts(num_stages, {0, 0, 0});
  std::size_t used = 0;
  for (const auto& t : traces) {
    if (only_correct && !t.correct) continue;
    if (t.steps.empty()) continue;
    ++used;
    const int n = static_cast<int>(t.steps.size());
    for (int i = 1; i <= n; ++i) {
      ++counts[stage_of(i, n, num_stages)][mode_index(t.steps[i - 1].mode)];
    }
  }
  if (used == 0) {
    throw std::invalid_argument("stage_distribution: no traces left after filtering");
  }
  StageDistribution dist;
  dist.proportions.resize(num_stages, {0.0, 0.0, 0.0});
  dist.counts.resize(num_stages, 0);
  for (std::size_t s = 0; s < num_stages; ++s) {
    const std::size_t total = counts[s][0] + counts[s][1] + counts[s][2];
    dist.counts[s] = total;
    if (total == 0) continue;
    for (std::size_t m = 0; m < 3; ++m) {
      dist.proportions[s][m] =
          static_cast<double>(counts[s][m]) / static_cast<double>(total);
    }
  }
  return dist;
}

ComparisonTable compare_report(std::span<const BenchmarkResult> results) {
  if (results.empty()) throw std::invalid_argument("compare_report: no results");
  ComparisonTable table;
  std::map<std::string, std::map<std::string, BenchmarkResult>> grid;
  std::set<std::string> benchmark_set;
  for (const auto& r : results) {
    if (!grid.contains(r.strategy)) table.strategies.push_back(r.strategy);
    if (!benchmark_set.contains(r.benchmark)) table.benchmarks.push_back(r.benchmark);
    benchmark_set.insert(r.benchmark);
    if (!grid[r.strategy].emplace(r.benchmark, r).second) {
      throw std::invalid_argument(fmt::format(
          "duplicate result for strategy '{}' on benchmark '{}'", r.strategy, r.benchmark));
    }
  }
  for (const auto& s : table.strategies) {
    std::vector<BenchmarkResult> row;
    for (const auto& b : table.benchmarks) {
      auto it = grid[s].find(b);
      if (it == grid[s].end()) {
        throw std::invalid_argument(
            fmt::format("strategy '{}' is missing benchmark '{}'", s, b));
      }
      row.push_back(it->second);
    }
    table.cells.push_back(std::move(row));
    const auto avg = macro_average(table.cells.back());
    table.averages.push_back(avg.front());
  }
  return table;
}

std::string ComparisonTable::render_text() const {
  std::size_t name_width = 8;
  for (const auto& s : strategies) name_width = std::max(name_width, s.size());

  std::string out = fmt::format("{:<{}}", "Setting", name_width);
  for (const auto& b : benchmarks) out += fmt::format(" | {:^17}", b);
  out += fmt::format(" | {:^17}\n", "Average");
  out += fmt::format("{:<{}}", "", name_width);
  for (std::size_t i = 0; i <= benchmarks.size(); ++i) {
    out += fmt::format(" | {:>7} {:>9}", "Acc", "Token");
  }
  out += '\n';
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    out += fmt::format("{:<{}}", strategies[s], name_width);
    for (const auto& cell : cells[s]) {
      out += fmt::format(" | {:>7} {:>9}", pct(cell.accuracy), tok(cell.avg_tokens));
    }
    out += fmt::format(" | {:>7} {:>9}\n", pct(averages[s].accuracy),
                       tok(averages[s].avg_tokens));
  }
  return out;
}

std::string ComparisonTable::render_jsonl() const {
  std::string out;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    for (const auto& cell : cells[s]) {
      nlohmann::ordered_json j;
      j["record"] = "result";
      j["benchmark"] = cell.benchmark;
      j["strategy"] = cell.strategy;
      j["n"] = cell.n_problems;
      j["accuracy"] = cell.accuracy;
      j["avg_tokens"] = cell.avg_tokens;
      out += j.dump() + '\n';
    }
    nlohmann::ordered_json a;
    a["record"] = "average";
    a["strategy"] = averages[s].strategy;
    a["n_benchmarks"] = averages[s].n_benchmarks;
    a["accuracy"] = averages[s].accuracy;
    a["avg_tokens"] = averages[s].avg_tokens;
    out += a.dump() + '\n';
  }
  return out;
}

}  // namespace pats
