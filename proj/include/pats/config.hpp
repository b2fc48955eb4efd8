// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pats/mode.hpp"

namespace pats {

enum class PenaltyPolicy : std::uint8_t {
  once,             // canonical: a bad step is regenerated at most one time
  never,            // bad steps are kept as-is
  until_threshold,  // regenerate until the score clears value_bad or the cap hits
};

// Which candidates stay eligible when a penalized step is re-selected.
enum class PenaltyPool : std::uint8_t {
  fresh_only,  // only the regenerated candidates
  combined,    // original and regenerated candidates ("union" in config files)
};

std::string_view to_string(PenaltyPolicy policy);
std::string_view to_string(PenaltyPool pool);
PenaltyPolicy parse_penalty_policy(std::string_view name);
PenaltyPool parse_penalty_pool(std::string_view name);

// Tunable surface of one search run. Defaults reproduce the reference setup:
// widths 2/4/8, thresholds 0.85/0.75/0.40, complex start, temperature 0.6.
struct SearchConfig {
  int width_simple = 2;
  int width_medium = 4;
  int width_complex = 8;

  double value_good = 0.85;
  double value_low = 0.75;
  double value_bad = 0.40;

  ThinkingMode initial_mode = ThinkingMode::complex;
  int max_steps = 40;
  // Total generated tokens per episode; 0 disables the budget.
  std::int64_t token_budget = 0;
  double temperature = 0.6;

  PenaltyPolicy penalty_policy = PenaltyPolicy::once;
  int penalty_iteration_cap = 20;
  PenaltyPool penalty_selection_pool = PenaltyPool::fresh_only;

  // A step is an answer if it contains this substring, or if one of its
  // lines starts with final_answer_prefix.
  std::string answer_marker = "\\boxed{";
  std::string final_answer_prefix = "Final Answer";

  // Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  bool operator==(const SearchConfig&) const = default;
};

}  // namespace pats
