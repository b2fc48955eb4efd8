// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>
#include <vector>

#include "pats/search.hpp"
#include "pats/strategy.hpp"
#include "pats/synthetic.hpp"
#include "pats/trace_io.hpp"
#include "support.hpp"

using namespace pats;
using pats::testing::ScriptedGenerator;
using pats::testing::ScriptedScorer;

namespace {

const Problem kProblem{"p1", "What is 6*7?", "42"};

CandidateStep cand(double score, std::int64_t tokens = 1) {
  return {"c", tokens, score};
}

StepRecord bad_step(double score) {
  StepRecord s;
  s.index = 1;
  s.mode = ThinkingMode::simple;
  s.width = 2;
  s.candidates = {cand(score - 0.1), cand(score)};
  s.selected = 1;
  return s;
}

}  // namespace

TEST_CASE("width_of maps modes to the configured widths") {
  SearchConfig c;
  CHECK(width_of(ThinkingMode::simple, c) == 2);
  CHECK(width_of(ThinkingMode::medium, c) == 4);
  CHECK(width_of(ThinkingMode::complex, c) == 8);
}

TEST_CASE("next_mode examples") {
  SearchConfig c;
  CHECK(next_mode(ThinkingMode::complex, 0.90, c) == ThinkingMode::medium);
  CHECK(next_mode(ThinkingMode::simple, 0.99, c) == ThinkingMode::simple);
  CHECK(next_mode(ThinkingMode::medium, 0.70, c) == ThinkingMode::complex);
  CHECK(next_mode(ThinkingMode::medium, 0.80, c) == ThinkingMode::medium);
  CHECK(next_mode(ThinkingMode::complex, 0.85, c) == ThinkingMode::medium);
  CHECK(next_mode(ThinkingMode::simple, 0.75, c) == ThinkingMode::simple);
  CHECK_THROWS_AS(next_mode(ThinkingMode::simple, 1.01, c), std::invalid_argument);
  CHECK_THROWS_AS(next_mode(ThinkingMode::simple, -0.01, c), std::invalid_argument);
}

TEST_CASE("next_mode truth table on the 0.01 grid") {
  SearchConfig c;
  int matches = 0;
  for (ThinkingMode m : kAllModes) {
    for (int k = 0; k <= 100; ++k) {
      const double s = k / 100.0;
      const auto got = static_cast<int>(mode_index(next_mode(m, s, c)));
      const int want = pats::testing::reference_next_mode(static_cast<int>(mode_index(m)), s);
      CHECK_MESSAGE(got == want, "mode " << to_string(m) << " score " << s);
      matches += got == want;
    }
  }
  CHECK(matches == 303);
}

TEST_CASE("next_mode never escalates except to complex below value_low") {
  SearchConfig c;
  for (ThinkingMode m : kAllModes) {
    for (int k = 0; k <= 1000; ++k) {
      const double s = k / 1000.0;
      const auto out = next_mode(m, s, c);
      if (s < c.value_low) {
        CHECK(out == ThinkingMode::complex);
      } else {
        CHECK(mode_index(out) <= mode_index(m));
      }
    }
  }
}

TEST_CASE("select_best examples") {
  std::vector<CandidateStep> a{cand(0.2), cand(0.9), cand(0.5)};
  CHECK(select_best(a) == 1);
  std::vector<CandidateStep> b{cand(0.7), cand(0.7)};
  CHECK(select_best(b) == 0);
  std::vector<CandidateStep> c{cand(0.1)};
  CHECK(select_best(c) == 0);
  CHECK_THROWS_AS(select_best(std::span<const CandidateStep>{}), std::invalid_argument);
}

TEST_CASE("select_best is an argmax and invariant under positive scaling") {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    std::vector<CandidateStep> cs;
    for (int j = 0; j < n; ++j) cs.push_back(cand(static_cast<double>(rng() % 20) / 20.0));
    const auto best = select_best(cs);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      CHECK(cs[best].score >= cs[j].score);
      if (j < best) CHECK(cs[j].score < cs[best].score);
    }
    auto scaled = cs;
    for (auto& x : scaled) x.score *= 0.37;
    CHECK(select_best(scaled) == best);
  }
}

TEST_CASE("apply_penalty policies") {
  SearchConfig c;
  ScriptedGenerator gen([](int, int, int j) { return "regen " + std::to_string(j); }, 5);
  ScriptedScorer scorer([](std::string_view t) { return t == "regen 3" ? 0.7 : 0.2; });
  const std::vector<std::string> accepted;
  const StepContext ctx{kProblem, accepted, 1};

  SUBCASE("once, first application regenerates complex width") {
    auto out = apply_penalty(bad_step(0.30), ctx, gen, scorer, c, 0, 11);
    CHECK(out.penalized);
    REQUIRE(out.penalty_candidates);
    CHECK(out.penalty_candidates->size() == 8);
    CHECK(out.penalty_selected == 3);
    CHECK(out.effective_score() == doctest::Approx(0.7));
    CHECK(out.generated_tokens() == 2 * 1 + 8 * 5);
    CHECK(gen.calls == 1);
  }
  SUBCASE("once, already penalized") {
    auto before = bad_step(0.30);
    auto out = apply_penalty(before, ctx, gen, scorer, c, 1, 11);
    CHECK(out == before);
    CHECK(gen.calls == 0);
  }
  SUBCASE("never") {
    c.penalty_policy = PenaltyPolicy::never;
    auto before = bad_step(0.30);
    CHECK(apply_penalty(before, ctx, gen, scorer, c, 0, 11) == before);
    CHECK(gen.calls == 0);
  }
  SUBCASE("step that is not bad is rejected") {
    CHECK_THROWS_AS(apply_penalty(bad_step(0.5), ctx, gen, scorer, c, 0, 11),
                    std::invalid_argument);
  }
}

TEST_CASE("apply_penalty until_threshold stops at the first good round or the cap") {
  SearchConfig c;
  c.penalty_policy = PenaltyPolicy::until_threshold;
  const std::vector<std::string> accepted;
  const StepContext ctx{kProblem, accepted, 1};

  SUBCASE("recovers on round 3") {
    int round = 0;
    ScriptedGenerator gen([&](int, int, int j) {
      if (j == 0) ++round;
      return "r" + std::to_string(round) + "j" + std::to_string(j);
    }, 1);
    ScriptedScorer scorer([](std::string_view t) { return t == "r3j5" ? 0.95 : 0.1; });
    auto out = apply_penalty(bad_step(0.3), ctx, gen, scorer, c, 0, 5);
    CHECK(out.penalty_candidates->size() == 24);
    CHECK(out.penalty_selected == 16 + 5);
    CHECK(out.effective_score() >= c.value_bad);
  }
  SUBCASE("hits the cap") {
    c.penalty_iteration_cap = 4;
    ScriptedGenerator gen([](int, int, int) { return "x"; }, 1);
    ScriptedScorer scorer([](std::string_view) { return 0.1; });
    auto out = apply_penalty(bad_step(0.3), ctx, gen, scorer, c, 0, 5);
    CHECK(out.penalty_candidates->size() == 32);
    CHECK(gen.calls == 4);
    CHECK(out.effective_score() < c.value_bad);
  }
}

TEST_CASE("combined pool never lowers the committed score") {
  SearchConfig c;
  c.penalty_selection_pool = PenaltyPool::combined;
  const std::vector<std::string> accepted;
  const StepContext ctx{kProblem, accepted, 1};
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    ScriptedGenerator gen([](int, int, int j) { return std::to_string(j); }, 1);
    std::vector<double> planted(8);
    for (auto& p : planted) p = uniform01(rng) * 0.5;
    ScriptedScorer scorer([&](std::string_view t) { return planted[std::stoi(std::string(t))]; });
    const double before = 0.05 + uniform01(rng) * 0.3;
    auto out = apply_penalty(bad_step(before), ctx, gen, scorer, c, 0, trial);
    CHECK(out.effective_score() >= before);
    if (!out.penalty_selected) CHECK(out.effective().score == before);
  }
}

TEST_CASE("is_terminal examples") {
  SearchConfig c;
  CHECK(is_terminal({"so \\boxed{42}", 1, 0.9}, 3, c) == Termination::answered);
  CHECK(is_terminal({"Final Answer: 42", 1, 0.9}, 3, c) == Termination::answered);
  CHECK(is_terminal({"carry on", 1, 0.9}, 5, c) == std::nullopt);
  CHECK(is_terminal({"carry on", 1, 0.9}, 40, c) == Termination::step_cap);
}

TEST_CASE("expand returns width candidates and is deterministic") {
  SearchConfig c;
  SyntheticEnvironment env(NoiseModel{0.9, 0.3, 0.05});
  auto sp = gen_problem(1, DifficultyProfile::constant(0.5), 3, "e1");
  env.add(sp);
  const Problem p = sp.as_problem();
  SyntheticGenerator gen(env);
  SyntheticScorer scorer;
  const std::vector<std::string> accepted;
  const StepContext ctx{p, accepted, 1};
  CHECK(expand(ctx, ThinkingMode::simple, gen, scorer, c, 7).size() == 2);
  CHECK(expand(ctx, ThinkingMode::complex, gen, scorer, c, 7).size() == 8);
  CHECK(expand(ctx, ThinkingMode::medium, gen, scorer, c, 7) ==
        expand(ctx, ThinkingMode::medium, gen, scorer, c, 7));

  pats::testing::ShortGenerator bad;
  CHECK_THROWS_AS(expand(ctx, ThinkingMode::medium, bad, scorer, c, 7), GenerationError);
}

TEST_CASE("expand clamps scores") {
  SearchConfig c;
  ScriptedGenerator gen([](int, int, int j) { return std::to_string(j); }, 1);
  ScriptedScorer scorer([](std::string_view t) { return t == "0" ? 1.7 : -3.0; });
  const std::vector<std::string> accepted;
  auto cs = expand({kProblem, accepted, 1}, ThinkingMode::simple, gen, scorer, c, 1);
  CHECK(cs[0].score == 1.0);
  CHECK(cs[1].score == 0.0);
}

TEST_CASE("run_episode on a trivially easy problem walks down the modes") {
  SearchConfig c;
  SyntheticEnvironment env(NoiseModel{0.9, 0.3, 0.0});
  auto sp = gen_problem(3, DifficultyProfile::constant(0.0), 5, "easy");
  env.add(sp);
  SyntheticGenerator gen(env);
  SyntheticScorer scorer;

  auto t = run_episode(sp.as_problem(), pats_strategy(), gen, scorer, c, 17);
  REQUIRE(t.steps.size() == 5);
  CHECK(t.steps[0].mode == ThinkingMode::complex);
  CHECK(t.steps[0].width == 8);
  CHECK(t.steps[1].mode == ThinkingMode::medium);
  CHECK(t.steps[2].mode == ThinkingMode::simple);
  CHECK(t.correct);
  CHECK(t.terminated == Termination::answered);
  CHECK_NOTHROW(check_trace_invariants(t, c));

  auto s = run_episode(sp.as_problem(), fixed_strategy(ThinkingMode::simple), gen, scorer, c, 17);
  for (const auto& st : s.steps) CHECK(st.width == 2);
}

TEST_CASE("run_episode token accounting over three steps") {
  SearchConfig c;
  ScriptedGenerator gen([](int step, int, int) {
    return step == 3 ? std::string("\\boxed{42}") : std::string("step");
  }, 10);
  ScriptedScorer scorer([](std::string_view) { return 0.9; });
  auto t = run_episode(kProblem, pats_strategy(), gen, scorer, c, 1);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].mode == ThinkingMode::complex);
  CHECK(t.steps[1].mode == ThinkingMode::medium);
  CHECK(t.steps[2].mode == ThinkingMode::simple);
  CHECK(t.total_tokens == 140);
  CHECK(t.total_tokens == recompute_total_tokens(t));
  CHECK(t.final_answer == "42");
  CHECK(t.correct);
}

TEST_CASE("run_episode respects the step cap and token budget") {
  SearchConfig c;
  c.max_steps = 4;
  ScriptedGenerator gen([](int, int, int) { return "step"; }, 10);
  ScriptedScorer scorer([](std::string_view) { return 0.8; });
  auto t = run_episode(kProblem, fixed_strategy(ThinkingMode::simple), gen, scorer, c, 1);
  CHECK(t.steps.size() == 4);
  CHECK(t.terminated == Termination::step_cap);
  CHECK_FALSE(t.final_answer);
  CHECK_FALSE(t.correct);

  c.max_steps = 40;
  c.token_budget = 50;
  auto b = run_episode(kProblem, fixed_strategy(ThinkingMode::simple), gen, scorer, c, 1);
  CHECK(b.terminated == Termination::budget_cap);
  CHECK(b.total_tokens == 60);
}

TEST_CASE("run_episode wraps generator failures with the partial trace") {
  SearchConfig c;
  pats::testing::ShortGenerator gen;
  ScriptedScorer scorer([](std::string_view) { return 0.9; });
  try {
    run_episode(kProblem, pats_strategy(), gen, scorer, c, 1);
    FAIL("expected EpisodeError");
  } catch (const EpisodeError& e) {
    CHECK(e.partial_trace().steps.empty());
  }
}

TEST_CASE("run_episode properties over random synthetic episodes") {
  SearchConfig c;
  SyntheticEnvironment env(NoiseModel{0.9, 0.3, 0.1});
  std::vector<SyntheticProblem> problems;
  for (int k = 0; k < 60; ++k) {
    const DifficultyProfile profiles[] = {DifficultyProfile::constant(0.4),
                                          DifficultyProfile::ramp(0.1, 0.9),
                                          DifficultyProfile::spike(0.2, 0.95, 0.5)};
    problems.push_back(gen_problem(k, profiles[k % 3], 4 + k % 5, "q" + std::to_string(k)));
    env.add(problems.back());
  }
  SyntheticGenerator gen(env);
  SyntheticScorer scorer;
  for (const auto& sp : problems) {
    const auto p = sp.as_problem();
    auto t = run_episode(p, pats_strategy(), gen, scorer, c, stable_hash(sp.id));
    CHECK_NOTHROW(check_trace_invariants(t, c));
    CHECK(serialize_trace(t) == serialize_trace(run_episode(p, pats_strategy(), gen, scorer, c, stable_hash(sp.id))));

    // Consecutive unpenalized steps follow next_mode exactly.
    for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) {
      const auto& st = t.steps[i];
      const auto basis = st.penalized ? ThinkingMode::complex : st.mode;
      CHECK(t.steps[i + 1].mode == next_mode(basis, st.effective_score(), c));
    }

    // Correctness equals the conjunction of committed-step correctness.
    bool all_ok = true;
    for (const auto& st : t.steps) all_ok = all_ok && parse_synthetic_tag(st.effective().text)->correct;
    CHECK(t.correct == (all_ok && t.terminated == Termination::answered));

    // Dropping any candidate breaks the token identity.
    if (!t.steps.empty()) {
      auto broken = t;
      broken.steps.back().candidates.pop_back();
      CHECK(recompute_total_tokens(broken) != broken.total_tokens);
    }
  }
}
