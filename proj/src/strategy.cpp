// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/strategy.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "pats/search.hpp"

namespace pats {

namespace sn = strategy_names;

namespace {

constexpr std::array<std::string_view, 10> kNames = {
    sn::kPats,          sn::kPatsFirstSimple,
    sn::kPatsFirstMedium, sn::kAllSimple,
    sn::kAllMedium,     sn::kAllComplex,
    sn::kRandom,        sn::kSolutionVerification,
    sn::kPatsNoPenalty, sn::kPatsInfinitePenalty,
};

constexpr std::uint64_t kAttemptStream = 0x415454ULL;

ThinkingMode switch_by_score(ThinkingMode current, double score,
                             const SearchConfig& config, Rng&) {
  return next_mode(current, score, config);
}

}  // namespace

std::span<const std::string_view> known_strategy_names() { return kNames; }

bool is_known_strategy(std::string_view name) {
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

Strategy pats_strategy(ThinkingMode initial) {
  Strategy s;
  switch (initial) {
    case ThinkingMode::complex:
      s.name = sn::kPats;
      break;
    case ThinkingMode::medium:
      s.name = sn::kPatsFirstMedium;
      break;
    case ThinkingMode::simple:
      s.name = sn::kPatsFirstSimple;
      break;
  }
  s.initial_mode = initial;
  s.decide_next = switch_by_score;
  s.uses_penalty = true;
  return s;
}

Strategy pats_no_penalty_strategy() {
  Strategy s = pats_strategy(ThinkingMode::complex);
  s.name = sn::kPatsNoPenalty;
  s.penalty_override = PenaltyPolicy::never;
  return s;
}

Strategy pats_infinite_penalty_strategy() {
  Strategy s = pats_strategy(ThinkingMode::complex);
  s.name = sn::kPatsInfinitePenalty;
  s.penalty_override = PenaltyPolicy::until_threshold;
  return s;
}

Strategy fixed_strategy(ThinkingMode mode) {
  Strategy s;
  s.name = std::string("all-").append(to_string(mode));
  s.initial_mode = mode;
  s.decide_next = [mode](ThinkingMode, double, const SearchConfig&, Rng&) {
    return mode;
  };
  s.uses_penalty = false;
  return s;
}

Strategy random_strategy() {
  Strategy s;
  s.name = sn::kRandom;
  s.initial_mode = ThinkingMode::complex;
  s.decide_next = [](ThinkingMode, double, const SearchConfig&, Rng& rng) {
    // Rejection keeps the draw exactly uniform over three outcomes.
    std::uint64_t x = 0;
    constexpr std::uint64_t kLimit = ~std::uint64_t{0} - (~std::uint64_t{0} % 3);
    do {
      x = rng();
    } while (x >= kLimit);
    return kAllModes[x % 3];
  };
  s.uses_penalty = false;
  return s;
}

Strategy make_strategy(std::string_view name) {
  if (name == sn::kPats) return pats_strategy(ThinkingMode::complex);
  if (name == sn::kPatsFirstSimple) return pats_strategy(ThinkingMode::simple);
  if (name == sn::kPatsFirstMedium) return pats_strategy(ThinkingMode::medium);
  if (name == sn::kAllSimple) return fixed_strategy(ThinkingMode::simple);
  if (name == sn::kAllMedium) return fixed_strategy(ThinkingMode::medium);
  if (name == sn::kAllComplex) return fixed_strategy(ThinkingMode::complex);
  if (name == sn::kRandom) return random_strategy();
  if (name == sn::kPatsNoPenalty) return pats_no_penalty_strategy();
  if (name == sn::kPatsInfinitePenalty) return pats_infinite_penalty_strategy();
  if (name == sn::kSolutionVerification) {
    throw std::invalid_argument(
        "solution-verification is a cascade; use run_named_strategy");
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

ReasoningTrace solution_verification_run(const Problem& problem,
                                         StepGenerator& generator,
                                         StepScorer& scorer,
                                         const SearchConfig& config,
                                         std::uint64_t seed) {
  constexpr std::array<ThinkingMode, 3> kLadder = {
      ThinkingMode::simple, ThinkingMode::medium, ThinkingMode::complex};

  ReasoningTrace combined;
  combined.problem_id = problem.id;
  combined.strategy_name = sn::kSolutionVerification;
  combined.seed = seed;

  auto append = [&combined](const ReasoningTrace& attempt) {
    combined.attempt_starts.push_back(static_cast<int>(combined.steps.size()) + 1);
    for (StepRecord step : attempt.steps) {
      step.index = static_cast<int>(combined.steps.size()) + 1;
      combined.steps.push_back(std::move(step));
    }
    combined.total_tokens += attempt.total_tokens;
    combined.final_answer = attempt.final_answer;
    combined.terminated = attempt.terminated;
    combined.correct = attempt.correct;
  };

  for (std::size_t k = 0; k < kLadder.size(); ++k) {
    const auto attempt_seed = derive_seed(seed, {kAttemptStream, k});
    ReasoningTrace attempt;
    try {
      attempt = run_episode(problem, fixed_strategy(kLadder[k]), generator,
                            scorer, config, attempt_seed);
    } catch (const EpisodeError& e) {
      if (!e.partial_trace().steps.empty()) append(e.partial_trace());
      combined.correct = false;
      combined.final_answer.reset();
      throw EpisodeError(e.what(), std::move(combined));
    }
    append(attempt);
    const bool last = k + 1 == kLadder.size();
    if (last || attempt.steps.back().effective_score() >= config.value_low) break;
  }
  return combined;
}

ReasoningTrace run_named_strategy(std::string_view name,
                                  const Problem& problem,
                                  StepGenerator& generator, StepScorer& scorer,
                                  const SearchConfig& config,
                                  std::uint64_t seed) {
  if (name == sn::kSolutionVerification) {
    return solution_verification_run(problem, generator, scorer, config, seed);
  }
  return run_episode(problem, make_strategy(name), generator, scorer, config,
                     seed);
}

}  // namespace pats
