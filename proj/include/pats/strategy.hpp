// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "pats/config.hpp"
#include "pats/model.hpp"
#include "pats/rng.hpp"
#include "pats/types.hpp"

namespace pats {

// Maps (mode of the step just committed, its score) to the next step's mode.
// For a penalized step the mode passed in is complex.
using DecideNext = std::function<ThinkingMode(
    ThinkingMode current, double score, const SearchConfig& config, Rng& rng)>;

struct Strategy {
  std::string name;
  ThinkingMode initial_mode = ThinkingMode::complex;
  DecideNext decide_next;
  bool uses_penalty = false;
  // Replaces config.penalty_policy for this strategy when set.
  std::optional<PenaltyPolicy> penalty_override;
};

namespace strategy_names {
inline constexpr std::string_view kPats = "pats";
inline constexpr std::string_view kPatsFirstSimple = "pats-first-simple";
inline constexpr std::string_view kPatsFirstMedium = "pats-first-medium";
inline constexpr std::string_view kAllSimple = "all-simple";
inline constexpr std::string_view kAllMedium = "all-medium";
inline constexpr std::string_view kAllComplex = "all-complex";
inline constexpr std::string_view kRandom = "random";
inline constexpr std::string_view kSolutionVerification =
    "solution-verification";
inline constexpr std::string_view kPatsNoPenalty = "pats-no-penalty";
inline constexpr std::string_view kPatsInfinitePenalty =
    "pats-infinite-penalty";
}  // namespace strategy_names

// Every name accepted by run_named_strategy, in a stable order.
std::span<const std::string_view> known_strategy_names();
bool is_known_strategy(std::string_view name);

// Adaptive switching. initial=complex is canonical; simple and medium give the
// first-simple / first-medium variants.
Strategy pats_strategy(ThinkingMode initial = ThinkingMode::complex);
Strategy pats_no_penalty_strategy();
Strategy pats_infinite_penalty_strategy();

// Same mode at every step, no penalty.
Strategy fixed_strategy(ThinkingMode mode);

// Complex first, then a uniform draw over the three modes after every step.
// Draws come from the episode's rng.
Strategy random_strategy();

// Resolves a step-level strategy by name. The solution-verification cascade
// is not a step-level strategy; use run_named_strategy for it.
// Throws std::invalid_argument on unknown names.
Strategy make_strategy(std::string_view name);

// Whole-solution cascade: all-simple, then all-medium, then all-complex, each a
// fresh episode with its own derived seed. An attempt is accepted when its
// final committed score is >= value_low; the all-complex attempt is accepted
// unconditionally. The returned trace holds every attempt's steps, renumbered
// consecutively, and bills all of them.
ReasoningTrace solution_verification_run(const Problem& problem,
                                         StepGenerator& generator,
                                         StepScorer& scorer,
                                         const SearchConfig& config,
                                         std::uint64_t seed);

// Runs any known strategy, including the cascade.
ReasoningTrace run_named_strategy(std::string_view name,
                                  const Problem& problem,
                                  StepGenerator& generator, StepScorer& scorer,
                                  const SearchConfig& config,
                                  std::uint64_t seed);

}  // namespace pats
