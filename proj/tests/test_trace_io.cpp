// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pats/search.hpp"
#include "pats/strategy.hpp"
#include "pats/synthetic.hpp"
#include "pats/trace_io.hpp"
#include "support.hpp"

using namespace pats;

TEST_CASE("traces round-trip through their serialized form") {
  SearchConfig c;
  SyntheticEnvironment env(NoiseModel{0.9, 0.3, 0.1});
  for (int k = 0; k < 40; ++k) {
    auto sp = gen_problem(k, DifficultyProfile::ramp(0.2, 0.9), 3 + k % 6, "rt" + std::to_string(k));
    env.add(sp);
    SyntheticGenerator gen(env);
    SyntheticScorer scorer;
    for (auto name : known_strategy_names()) {
      SearchConfig cc = c;
      if (k % 2) cc.penalty_selection_pool = PenaltyPool::combined;
      auto t = run_named_strategy(name, sp.as_problem(), gen, scorer, cc, k);
      t.benchmark = "bench";
      const auto line = serialize_trace(t);
      CHECK(line.find('\n') == std::string::npos);
      CHECK(parse_trace(line) == t);
    }
  }
}

TEST_CASE("trace schema") {
  SearchConfig c;
  pats::testing::ScriptedGenerator gen([](int, int, int) { return std::string("\\boxed{1}"); }, 4);
  pats::testing::ScriptedScorer scorer([](std::string_view) { return 0.2; });
  auto t = run_episode({"id", "q", "1"}, pats_strategy(), gen, scorer, c, 3);
  auto j = nlohmann::json::parse(serialize_trace(t));
  for (auto key : {"schema_version", "problem_id", "strategy", "seed", "steps", "final_answer",
                   "terminated", "correct", "total_tokens"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j["schema_version"] == kTraceSchemaVersion);
  const auto& step = j["steps"][0];
  for (auto key : {"index", "mode", "width", "candidates", "selected", "penalized",
                   "penalty_candidates", "penalty_selected"}) {
    CHECK_MESSAGE(step.contains(key), key);
  }
  CHECK(step["candidates"][0].size() == 3);

  j["schema_version"] = kTraceSchemaVersion + 1;
  CHECK_THROWS_AS(parse_trace(j.dump()), TraceFormatError);
  CHECK_THROWS_AS(parse_trace("{not json"), TraceFormatError);
  CHECK_THROWS_AS(parse_trace(R"({"schema_version":1})"), TraceFormatError);
}

TEST_CASE("trace files") {
  auto dir = pats::testing::scratch_dir("trace-io");
  std::vector<ReasoningTrace> ts(3);
  for (int k = 0; k < 3; ++k) {
    ts[k].problem_id = "p" + std::to_string(k);
    ts[k].strategy_name = "all-simple";
    ts[k].final_answer = k == 1 ? std::optional<std::string>{} : std::optional<std::string>{"x"};
  }
  write_trace_file(dir / "t.jsonl", ts);
  CHECK(pats::testing::count_lines(dir / "t.jsonl") == 3);
  CHECK(read_trace_file(dir / "t.jsonl") == ts);
}
