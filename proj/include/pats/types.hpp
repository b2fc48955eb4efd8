// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pats/mode.hpp"

namespace pats {

struct Problem {
  std::string id;
  std::string question;
  // Reference answer used for correctness checking.
  std::string answer;
};

// One generated reasoning step. `tokens` counts generated output tokens and
// `score` is the reward-model value, already clamped to [0, 1].
struct CandidateStep {
  std::string text;
  std::int64_t tokens = 0;
  double score = 0.0;

  bool operator==(const CandidateStep&) const = default;
};

struct StepRecord {
  int index = 0;  // 1-based
  ThinkingMode mode = ThinkingMode::complex;
  int width = 0;
  std::vector<CandidateStep> candidates;
  std::size_t selected = 0;

  bool penalized = false;
  // Every regenerated candidate, all penalty rounds concatenated in order.
  std::optional<std::vector<CandidateStep>> penalty_candidates;
  // Index into penalty_candidates of the committed step. Absent when the
  // step was penalized but the original selection stayed best (combined pool).
  std::optional<std::size_t> penalty_selected;

  // The committed candidate: post-penalty when the penalty replaced it.
  const CandidateStep& effective() const;
  double effective_score() const { return effective().score; }
  std::int64_t generated_tokens() const;

  bool operator==(const StepRecord&) const = default;
};

enum class Termination : std::uint8_t { answered, step_cap, budget_cap };

std::string_view to_string(Termination termination);
Termination parse_termination(std::string_view name);

struct ReasoningTrace {
  std::string problem_id;
  std::string benchmark;
  std::string strategy_name;
  std::vector<StepRecord> steps;
  std::optional<std::string> final_answer;
  Termination terminated = Termination::step_cap;
  bool correct = false;
  std::int64_t total_tokens = 0;
  std::uint64_t seed = 0;
  // 1-based first step of each whole-solution attempt. Empty for
  // single-attempt strategies.
  std::vector<int> attempt_starts;

  bool operator==(const ReasoningTrace&) const = default;
};

// Sum of tokens over every candidate in the trace, penalty rounds included.
std::int64_t recompute_total_tokens(const ReasoningTrace& trace);

}  // namespace pats
