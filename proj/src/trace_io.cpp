// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace pats {

namespace {

using ojson = nlohmann::ordered_json;

ojson candidates_to_json(const std::vector<CandidateStep>& candidates) {
  ojson arr = ojson::array();
  for (const auto& c : candidates) {
    ojson j;
    j["text"] = c.text;
    j["tokens"] = c.tokens;
    j["score"] = c.score;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<CandidateStep> candidates_from_json(const ojson& arr) {
  std::vector<CandidateStep> out;
  for (const auto& j : arr) {
    CandidateStep c;
    c.text = j.at("text").get<std::string>();
    c.tokens = j.at("tokens").get<std::int64_t>();
    c.score = j.at("score").get<double>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string serialize_trace(const ReasoningTrace& trace) {
  ojson j;
  j["schema_version"] = kTraceSchemaVersion;
  j["problem_id"] = trace.problem_id;
  j["benchmark"] = trace.benchmark;
  j["strategy"] = trace.strategy_name;
  j["seed"] = trace.seed;
  ojson steps = ojson::array();
  for (const auto& s : trace.steps) {
    ojson js;
    js["index"] = s.index;
    js["mode"] = to_string(s.mode);
    js["width"] = s.width;
    js["candidates"] = candidates_to_json(s.candidates);
    js["selected"] = s.selected;
    js["penalized"] = s.penalized;
    if (s.penalty_candidates) {
      js["penalty_candidates"] = candidates_to_json(*s.penalty_candidates);
    }
    if (s.penalty_selected) js["penalty_selected"] = *s.penalty_selected;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["final_answer"] = trace.final_answer ? ojson(*trace.final_answer) : ojson(nullptr);
  j["terminated"] = to_string(trace.terminated);
  j["correct"] = trace.correct;
  j["total_tokens"] = trace.total_tokens;
  if (!trace.attempt_starts.empty()) j["attempt_starts"] = trace.attempt_starts;
  return j.dump();
}

ReasoningTrace parse_trace(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceFormatError(std::string("invalid trace JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("schema_version")) {
      throw TraceFormatError("trace record has no schema_version");
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kTraceSchemaVersion) {
      throw TraceFormatError(fmt::format("trace schema_version {} unsupported (expected {})",
                                         version, kTraceSchemaVersion));
    }
    ReasoningTrace t;
    t.problem_id = j.at("problem_id").get<std::string>();
    t.benchmark = j.value("benchmark", std::string());
    t.strategy_name = j.at("strategy").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& js : j.at("steps")) {
      StepRecord s;
      s.index = js.at("index").get<int>();
      s.mode = parse_mode(js.at("mode").get<std::string>());
      s.width = js.at("width").get<int>();
      s.candidates = candidates_from_json(js.at("candidates"));
      s.selected = js.at("selected").get<std::size_t>();
      s.penalized = js.at("penalized").get<bool>();
      if (js.contains("penalty_candidates")) {
        s.penalty_candidates = candidates_from_json(js.at("penalty_candidates"));
      }
      if (js.contains("penalty_selected")) {
        s.penalty_selected = js.at("penalty_selected").get<std::size_t>();
      }
      t.steps.push_back(std::move(s));
    }
    if (!j.at("final_answer").is_null()) {
      t.final_answer = j.at("final_answer").get<std::string>();
    }
    t.terminated = parse_termination(j.at("terminated").get<std::string>());
    t.correct = j.at("correct").get<bool>();
    t.total_tokens = j.at("total_tokens").get<std::int64_t>();
    if (j.contains("attempt_starts")) {
      t.attempt_starts = j.at("attempt_starts").get<std::vector<int>>();
    }
    return t;
  } catch (const TraceFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw TraceFormatError(std::string("malformed trace record: ") + e.what());
  }
}

void write_trace_file(const std::filesystem::path& path,
                      std::span<const ReasoningTrace> traces) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& t : traces) out << serialize_trace(t) << '\n';
}

std::vector<ReasoningTrace> read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  std::vector<ReasoningTrace> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_trace(line));
    } catch (const TraceFormatError& e) {
      throw TraceFormatError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

std::string render_report_jsonl(const AggregateReport& report,
                                std::span<const StrategyStages> stages) {
  std::string out;
  for (const auto& r : report.results) {
    ojson j;
    j["record"] = "result";
    j["benchmark"] = r.benchmark;
    j["strategy"] = r.strategy;
    j["n"] = r.n_problems;
    j["accuracy"] = r.accuracy;
    j["avg_tokens"] = r.avg_tokens;
    out += j.dump() + '\n';
  }
  for (const auto& a : report.averages) {
    ojson j;
    j["record"] = "average";
    j["strategy"] = a.strategy;
    j["n_benchmarks"] = a.n_benchmarks;
    j["accuracy"] = a.accuracy;
    j["avg_tokens"] = a.avg_tokens;
    out += j.dump() + '\n';
  }
  for (const auto& s : stages) {
    ojson j;
    j["record"] = "stages";
    j["strategy"] = s.strategy;
    ojson arr = ojson::array();
    for (std::size_t k = 0; k < s.distribution.num_stages(); ++k) {
      ojson st;
      st["stage"] = k;
      st["steps"] = s.distribution.counts[k];
      for (ThinkingMode m : kAllModes) {
        st[std::string(to_string(m))] = s.distribution.proportions[k][mode_index(m)];
      }
      arr.push_back(std::move(st));
    }
    j["stages"] = std::move(arr);
    out += j.dump() + '\n';
  }
  return out;
}

std::string render_report_text(const AggregateReport& report,
                               std::span<const StrategyStages> stages) {
  std::string out = fmt::format("{:<24} {:<20} {:>6} {:>7} {:>10}\n", "strategy",
                                "benchmark", "n", "acc%", "tokens");
  for (const auto& r : report.results) {
    out += fmt::format("{:<24} {:<20} {:>6} {:>7.1f} {:>10.1f}\n", r.strategy,
                       r.benchmark, r.n_problems, 100.0 * r.accuracy, r.avg_tokens);
  }
  out += '\n';
  out += fmt::format("{:<24} {:<20} {:>6} {:>7} {:>10}\n", "strategy", "(average)",
                     "k", "acc%", "tokens");
  for (const auto& a : report.averages) {
    out += fmt::format("{:<24} {:<20} {:>6} {:>7.1f} {:>10.1f}\n", a.strategy, "",
                       a.n_benchmarks, 100.0 * a.accuracy, a.avg_tokens);
  }
  for (const auto& s : stages) {
    out += fmt::format("\nmode distribution by stage: {}\n", s.strategy);
    out += fmt::format("{:>6} {:>7} {:>8} {:>8} {:>8}\n", "stage", "steps", "simple",
                       "medium", "complex");
    for (std::size_t k = 0; k < s.distribution.num_stages(); ++k) {
      const auto& p = s.distribution.proportions[k];
      out += fmt::format("{:>6} {:>7} {:>8.3f} {:>8.3f} {:>8.3f}\n", k,
                         s.distribution.counts[k], p[0], p[1], p[2]);
    }
  }
  return out;
}

std::vector<BenchmarkResult> read_report_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open report " + path.string());
  std::vector<BenchmarkResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.value("record", std::string()) != "result") continue;
      BenchmarkResult r;
      r.benchmark = j.at("benchmark").get<std::string>();
      r.strategy = j.at("strategy").get<std::string>();
      r.n_problems = j.at("n").get<int>();
      r.accuracy = j.at("accuracy").get<double>();
      r.avg_tokens = j.at("avg_tokens").get<double>();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

}  // namespace pats
