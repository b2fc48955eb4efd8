// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "pats/config.hpp"
#include "pats/model.hpp"
#include "pats/strategy.hpp"
#include "pats/types.hpp"

namespace pats {

int width_of(ThinkingMode mode, const SearchConfig& config);

// Mode for step i+1 given the committed score of step i:
//   score >= value_good  -> one level simpler (simple stays simple)
//   score <  value_low   -> complex
//   otherwise            -> unchanged
// Throws std::invalid_argument if score is outside [0, 1].
ThinkingMode next_mode(ThinkingMode current, double score,
                       const SearchConfig& config);

// Generates width_of(mode) candidates and scores each one. Candidate order is
// generation order.
std::vector<CandidateStep> expand(const StepContext& context, ThinkingMode mode,
                                  StepGenerator& generator, StepScorer& scorer,
                                  const SearchConfig& config,
                                  std::uint64_t seed);

// Argmax over score; ties go to the lowest index.
std::size_t select_best(std::span<const CandidateStep> candidates);

// Regenerates a bad step at complex width according to config.penalty_policy.
// `already_penalized_count` is the number of regeneration rounds this step has
// already had. Requires step.effective_score() < config.value_bad.
StepRecord apply_penalty(StepRecord step, const StepContext& context,
                         StepGenerator& generator, StepScorer& scorer,
                         const SearchConfig& config,
                         int already_penalized_count, std::uint64_t seed);

std::optional<Termination> is_terminal(const CandidateStep& selected,
                                       int steps_so_far,
                                       const SearchConfig& config);

// Thrown when a generator or scorer fails mid-episode. Carries the steps
// completed so far.
class EpisodeError : public std::runtime_error {
 public:
  EpisodeError(const std::string& what, ReasoningTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ReasoningTrace& partial_trace() const { return partial_; }

 private:
  ReasoningTrace partial_;
};

// Runs one best-first episode: expand, select, optionally penalize, check for
// termination, then let the strategy pick the next mode. Deterministic in
// (seed, config) for deterministic components.
ReasoningTrace run_episode(const Problem& problem, const Strategy& strategy,
                           StepGenerator& generator, StepScorer& scorer,
                           const SearchConfig& config, std::uint64_t seed);

// Throws std::logic_error describing the first broken trace invariant.
void check_trace_invariants(const ReasoningTrace& trace,
                            const SearchConfig& config);

}  // namespace pats
