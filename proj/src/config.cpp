// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pats {

std::string_view to_string(PenaltyPolicy policy) {
  switch (policy) {
    case PenaltyPolicy::once:
      return "once";
    case PenaltyPolicy::never:
      return "never";
    case PenaltyPolicy::until_threshold:
      return "until_threshold";
  }
  return "unknown";
}

std::string_view to_string(PenaltyPool pool) {
  return pool == PenaltyPool::fresh_only ? "fresh_only" : "union";
}

PenaltyPolicy parse_penalty_policy(std::string_view name) {
  for (auto p : {PenaltyPolicy::once, PenaltyPolicy::never,
                 PenaltyPolicy::until_threshold}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown penalty policy '" + std::string(name) +
                              "'");
}

PenaltyPool parse_penalty_pool(std::string_view name) {
  if (name == "fresh_only") return PenaltyPool::fresh_only;
  if (name == "union") return PenaltyPool::combined;
  throw std::invalid_argument("unknown penalty selection pool '" +
                              std::string(name) + "'");
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid search config: ") + what);
}

}  // namespace

void SearchConfig::validate() const {
  require(width_simple >= 1, "width_simple must be >= 1");
  require(width_simple <= width_medium && width_medium <= width_complex,
          "widths must satisfy simple <= medium <= complex");
  require(std::isfinite(value_bad) && std::isfinite(value_low) &&
              std::isfinite(value_good),
          "thresholds must be finite");
  require(0.0 <= value_bad && value_bad < value_low && value_low <= value_good &&
              value_good <= 1.0,
          "thresholds must satisfy 0 <= value_bad < value_low <= value_good <= 1");
  require(max_steps >= 1, "max_steps must be >= 1");
  require(token_budget >= 0, "token_budget must be >= 0");
  require(std::isfinite(temperature) && temperature >= 0.0,
          "temperature must be >= 0");
  require(penalty_iteration_cap >= 1, "penalty_iteration_cap must be >= 1");
  require(!answer_marker.empty() || !final_answer_prefix.empty(),
          "at least one answer marker is required");
}

}  // namespace pats
