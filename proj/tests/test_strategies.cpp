// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <map>
#include <string>

#include "pats/search.hpp"
#include "pats/strategy.hpp"
#include "pats/synthetic.hpp"
#include "support.hpp"

using namespace pats;
using pats::testing::ScriptedGenerator;
using pats::testing::ScriptedScorer;

namespace {

const Problem kProblem{"p", "q", "7"};

// Never answers, so episodes run to the step cap.
ScriptedGenerator endless() {
  return ScriptedGenerator([](int, int, int) { return std::string("go on"); }, 3);
}

}  // namespace

TEST_CASE("strategy constructors") {
  auto p = pats_strategy();
  CHECK(p.name == "pats");
  CHECK(p.initial_mode == ThinkingMode::complex);
  CHECK(p.uses_penalty);
  CHECK_FALSE(p.penalty_override);
  CHECK(pats_strategy(ThinkingMode::simple).name == "pats-first-simple");
  CHECK(pats_strategy(ThinkingMode::medium).name == "pats-first-medium");
  CHECK(pats_strategy(ThinkingMode::medium).initial_mode == ThinkingMode::medium);
  CHECK(pats_no_penalty_strategy().penalty_override == PenaltyPolicy::never);
  CHECK(pats_infinite_penalty_strategy().penalty_override == PenaltyPolicy::until_threshold);
  CHECK(fixed_strategy(ThinkingMode::medium).name == "all-medium");
  CHECK_FALSE(fixed_strategy(ThinkingMode::medium).uses_penalty);
  CHECK(random_strategy().initial_mode == ThinkingMode::complex);
  CHECK_FALSE(random_strategy().uses_penalty);

  for (auto name : known_strategy_names()) {
    CHECK(is_known_strategy(name));
    if (name != strategy_names::kSolutionVerification) CHECK(make_strategy(name).name == name);
  }
  CHECK(known_strategy_names().size() == 10);
  CHECK_THROWS_AS(make_strategy("greedy"), std::invalid_argument);
  CHECK_THROWS_AS(make_strategy("solution-verification"), std::invalid_argument);
}

TEST_CASE("fixed strategies keep one mode on every step") {
  SearchConfig c;
  c.max_steps = 12;
  auto gen = endless();
  Rng rng(3);
  for (ThinkingMode m : kAllModes) {
    ScriptedScorer scorer([&](std::string_view) { return uniform01(rng); });
    auto t = run_episode(kProblem, fixed_strategy(m), gen, scorer, c, 9);
    REQUIRE(t.steps.size() == 12);
    for (const auto& st : t.steps) {
      CHECK(st.mode == m);
      CHECK(st.width == width_of(m, c));
      CHECK_FALSE(st.penalized);
    }
  }
}

TEST_CASE("random decisions are uniform over the three modes") {
  SearchConfig c;
  auto r = random_strategy();
  Rng rng(2026);
  std::array<int, 3> counts{};
  for (int k = 0; k < 30000; ++k) ++counts[mode_index(r.decide_next(ThinkingMode::medium, 0.5, c, rng))];
  for (int n : counts) {
    CHECK(n / 30000.0 >= 0.323);
    CHECK(n / 30000.0 <= 0.344);
  }
}

TEST_CASE("random traces: complex first, chi-square on later steps") {
  SearchConfig c;
  c.max_steps = 41;
  auto gen = endless();
  ScriptedScorer scorer([](std::string_view) { return 0.8; });
  std::array<int, 3> counts{};
  int decisions = 0;
  for (std::uint64_t e = 0; decisions < 10000; ++e) {
    auto t = run_episode(kProblem, random_strategy(), gen, scorer, c, derive_seed(77, {e}));
    CHECK(t.steps.front().mode == ThinkingMode::complex);
    for (std::size_t i = 1; i < t.steps.size() && decisions < 10000; ++i, ++decisions) {
      ++counts[mode_index(t.steps[i].mode)];
    }
  }
  double chi2 = 0;
  for (int n : counts) chi2 += (n - decisions / 3.0) * (n - decisions / 3.0) / (decisions / 3.0);
  // 2 degrees of freedom, p = 0.001.
  CHECK(chi2 < 13.816);

  auto a = run_episode(kProblem, random_strategy(), gen, scorer, c, 5);
  auto b = run_episode(kProblem, random_strategy(), gen, scorer, c, 5);
  CHECK(a == b);
}

TEST_CASE("penalty ablations") {
  SearchConfig c;
  c.max_steps = 3;
  ScriptedGenerator gen([](int, int, int) { return std::string("go"); }, 1);
  ScriptedScorer scorer([](std::string_view) { return 0.1; });
  auto none = run_named_strategy("pats-no-penalty", kProblem, gen, scorer, c, 1);
  for (const auto& st : none.steps) CHECK_FALSE(st.penalized);
  auto once = run_named_strategy("pats", kProblem, gen, scorer, c, 1);
  for (const auto& st : once.steps) CHECK(st.penalty_candidates->size() == 8);
  auto inf = run_named_strategy("pats-infinite-penalty", kProblem, gen, scorer, c, 1);
  for (const auto& st : inf.steps) CHECK(st.penalty_candidates->size() == 8u * 20u);
}

TEST_CASE("solution-verification cascade attempts") {
  SearchConfig c;
  // Each attempt is one answered step; the scorer reads the width back out.
  ScriptedGenerator gen([](int, int n, int) { return "w" + std::to_string(n) + " \\boxed{7}"; }, 10);
  auto planted = [](std::map<int, double> by_width) {
    return ScriptedScorer([by_width](std::string_view t) {
      return by_width.at(std::stoi(std::string(t.substr(1, t.find(' ') - 1))));
    });
  };

  SUBCASE("accepted after one attempt") {
    auto s = planted({{2, 0.80}});
    auto t = solution_verification_run(kProblem, gen, s, c, 4);
    CHECK(t.attempt_starts == std::vector<int>{1});
    CHECK(t.total_tokens == 20);
    CHECK(t.strategy_name == "solution-verification");
  }
  SUBCASE("accepted after two attempts") {
    auto s = planted({{2, 0.60}, {4, 0.90}});
    auto t = solution_verification_run(kProblem, gen, s, c, 4);
    CHECK(t.attempt_starts == std::vector<int>{1, 2});
    CHECK(t.total_tokens == 20 + 40);
    CHECK(t.steps[1].width == 4);
  }
  SUBCASE("complex attempt returned regardless of score") {
    auto s = planted({{2, 0.60}, {4, 0.60}, {8, 0.05}});
    auto t = solution_verification_run(kProblem, gen, s, c, 4);
    CHECK(t.attempt_starts == std::vector<int>{1, 2, 3});
    CHECK(t.total_tokens == 20 + 40 + 80);
    CHECK(t.total_tokens == recompute_total_tokens(t));
    CHECK(t.steps.back().width == 8);
    CHECK(t.correct);
    for (std::size_t i = 0; i < t.steps.size(); ++i) CHECK(t.steps[i].index == static_cast<int>(i) + 1);
  }
}

TEST_CASE("cascade attempt count follows final scores on random synthetic problems") {
  SearchConfig c;
  SyntheticEnvironment env(NoiseModel{0.9, 0.3, 0.05});
  for (int k = 0; k < 80; ++k) {
    auto sp = gen_problem(k, DifficultyProfile::constant(0.5), 3, "v" + std::to_string(k));
    env.add(sp);
    SyntheticGenerator gen(env);
    SyntheticScorer scorer;
    auto t = solution_verification_run(sp.as_problem(), gen, scorer, c, k);
    const auto& starts = t.attempt_starts;
    REQUIRE(starts.size() >= 1);
    REQUIRE(starts.size() <= 3);
    for (std::size_t a = 0; a + 1 < starts.size(); ++a) {
      // The attempt before each retry ended below value_low.
      CHECK(t.steps[starts[a + 1] - 2].effective_score() < c.value_low);
    }
    if (starts.size() < 3) CHECK(t.steps.back().effective_score() >= c.value_low);
    CHECK(t.total_tokens == recompute_total_tokens(t));
  }
}
