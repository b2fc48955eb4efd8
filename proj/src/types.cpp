// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/types.hpp"

#include <stdexcept>
#include <string>

namespace pats {

const CandidateStep& StepRecord::effective() const {
  if (penalized && penalty_selected && penalty_candidates) {
    return penalty_candidates->at(*penalty_selected);
  }
  return candidates.at(selected);
}

std::int64_t StepRecord::generated_tokens() const {
  std::int64_t total = 0;
  for (const auto& c : candidates) total += c.tokens;
  if (penalty_candidates) {
    for (const auto& c : *penalty_candidates) total += c.tokens;
  }
  return total;
}

std::string_view to_string(Termination termination) {
  switch (termination) {
    case Termination::answered:
      return "answered";
    case Termination::step_cap:
      return "step_cap";
    case Termination::budget_cap:
      return "budget_cap";
  }
  return "unknown";
}

Termination parse_termination(std::string_view name) {
  for (auto t : {Termination::answered, Termination::step_cap,
                 Termination::budget_cap}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown termination '" + std::string(name) + "'");
}

std::int64_t recompute_total_tokens(const ReasoningTrace& trace) {
  std::int64_t total = 0;
  for (const auto& step : trace.steps) total += step.generated_tokens();
  return total;
}

}  // namespace pats
