// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <optional>
#include <thread>
#include <tuple>

#include <unistd.h>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "pats/dataset.hpp"
#include "pats/remote.hpp"
#include "pats/rng.hpp"
#include "pats/search.hpp"
#include "pats/strategy.hpp"
#include "pats/synthetic.hpp"
#include "pats/trace_io.hpp"

namespace pats {

namespace {

struct Job {
  std::size_t strategy = 0;
  std::string benchmark;
  Problem problem;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Shared by run and analyze so both produce byte-identical reports.
AggregateReport write_report(const std::filesystem::path& dir,
                             const std::vector<ReasoningTrace>& traces,
                             std::size_t num_stages, bool only_correct) {
  AggregateReport report = aggregate(traces);
  std::vector<StrategyStages> stages;
  for (const auto& avg : report.averages) {
    std::vector<ReasoningTrace> mine;
    for (const auto& t : traces) {
      if (t.strategy_name == avg.strategy) mine.push_back(t);
    }
    const bool any = std::any_of(mine.begin(), mine.end(),
                                 [&](const ReasoningTrace& t) { return t.correct || !only_correct; });
    if (!any) continue;
    stages.push_back({avg.strategy, stage_distribution(mine, num_stages, only_correct)});
  }
  write_text(dir / "report.jsonl", render_report_jsonl(report, stages));
  write_text(dir / "report.txt", render_report_text(report, stages));
  return report;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof(buf) - 1) != 0) return "unknown";
  return buf;
}

}  // namespace

RunOutcome run_command(const RunConfig& config) {
  config.validate();

  std::unique_ptr<SyntheticEnvironment> env;
  std::unique_ptr<StepGenerator> generator;
  std::unique_ptr<StepScorer> scorer;
  std::vector<std::pair<std::string, Problem>> problems;

  if (config.backend.kind == BackendConfig::Kind::synthetic) {
    env = std::make_unique<SyntheticEnvironment>(config.backend.noise);
    for (const auto& b : config.benchmarks) {
      for (auto& p : std::get<SyntheticSuite>(b).materialize()) {
        problems.emplace_back(std::string(benchmark_name(b)), p.as_problem());
        env->add(std::move(p));
      }
    }
    generator = std::make_unique<SyntheticGenerator>(*env);
    scorer = std::make_unique<SyntheticScorer>();
  } else {
    for (const auto& b : config.benchmarks) {
      for (const auto& r : ingest_dataset(std::get<DatasetSource>(b).path)) {
        problems.emplace_back(std::string(benchmark_name(b)), r.as_problem());
      }
    }
    auto limiter = std::make_shared<ConcurrencyLimiter>(config.backend.generator.max_in_flight);
    generator = std::make_unique<RemoteGenerator>(config.backend.generator,
                                                  config.backend.generator_options, limiter);
    scorer = std::make_unique<RemoteScorer>(config.backend.scorer, limiter);
  }

  std::vector<Job> jobs;
  for (std::size_t s = 0; s < config.strategies.size(); ++s) {
    for (const auto& [bench, problem] : problems) jobs.push_back({s, bench, problem});
  }

  std::vector<std::optional<ReasoningTrace>> results(jobs.size());
  std::vector<std::optional<std::string>> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const StrategySpec& spec = config.strategies[job.strategy];
      try {
        ReasoningTrace t = run_named_strategy(
            spec.name, job.problem, *generator, *scorer, spec.search,
            episode_seed(config.seed, spec.name, job.problem.id));
        t.benchmark = job.benchmark;
        results[i] = std::move(t);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.parallelism),
                                               std::max<std::size_t>(jobs.size(), 1));
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  RunOutcome outcome;
  for (const auto& spec : config.strategies) outcome.traces[spec.name];
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& name = config.strategies[jobs[i].strategy].name;
    if (results[i]) {
      outcome.traces[name].push_back(std::move(*results[i]));
    } else {
      outcome.failures.push_back({name, jobs[i].problem.id, errors[i].value_or("unknown error")});
    }
  }

  std::vector<ReasoningTrace> all;
  for (auto& [name, traces] : outcome.traces) {
    std::sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) {
      return std::tie(a.problem_id, a.benchmark) < std::tie(b.problem_id, b.benchmark);
    });
    const auto path = config.output_dir / "traces" / (name + ".jsonl");
    write_trace_file(path, traces);
    outcome.trace_files.push_back(path);
    all.insert(all.end(), traces.begin(), traces.end());
  }
  if (!all.empty()) write_report(config.output_dir, all, 5, true);

  nlohmann::ordered_json manifest;
  manifest["started_by"] = "pats run";
  manifest["finished_at"] = utc_timestamp();
  manifest["host"] = host_name();
  manifest["seed"] = config.seed;
  manifest["parallelism"] = config.parallelism;
  manifest["episodes"] = jobs.size();
  manifest["failures"] = outcome.failures.size();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : outcome.failures) {
    failures.push_back({{"strategy", f.strategy}, {"problem_id", f.problem_id}, {"error", f.message}});
  }
  manifest["failure_details"] = std::move(failures);
  write_text(config.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return outcome;
}

AggregateReport analyze_command(const std::vector<std::filesystem::path>& trace_paths,
                                const AnalyzeOptions& options) {
  if (trace_paths.empty()) throw std::invalid_argument("analyze: no trace files given");
  std::vector<ReasoningTrace> all;
  for (const auto& path : trace_paths) {
    auto traces = read_trace_file(path);
    if (traces.empty()) {
      throw std::invalid_argument("analyze: trace file " + path.string() + " is empty");
    }
    all.insert(all.end(), std::make_move_iterator(traces.begin()),
               std::make_move_iterator(traces.end()));
  }
  return write_report(options.output_dir, all, options.num_stages, options.only_correct);
}

ComparisonTable compare_command(const std::vector<std::filesystem::path>& report_paths,
                                const std::filesystem::path& output_dir) {
  std::vector<BenchmarkResult> results;
  for (const auto& path : report_paths) {
    auto part = read_report_results(path);
    results.insert(results.end(), part.begin(), part.end());
  }
  if (results.empty()) throw std::invalid_argument("compare: no result records in input");
  ComparisonTable table = compare_report(results);
  write_text(output_dir / "comparison.txt", table.render_text());
  write_text(output_dir / "comparison.jsonl", table.render_jsonl());
  return table;
}

}  // namespace pats
