// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pats/types.hpp"

namespace pats {

// What a generator sees when asked for the next step.
struct StepContext {
  const Problem& problem;
  std::span<const std::string> accepted_steps;
  int step_index = 1;  // 1-based index of the step being generated
};

// Produces candidate next steps. Implementations must return exactly `n`
// candidates or throw; `score` of the returned candidates is ignored.
class StepGenerator {
 public:
  virtual ~StepGenerator() = default;
  virtual std::vector<CandidateStep> generate(const StepContext& context,
                                              int n, double temperature,
                                              std::uint64_t seed) = 0;
};

// Process reward model. Callers clamp the result to [0, 1].
class StepScorer {
 public:
  virtual ~StepScorer() = default;
  virtual double score(const Problem& problem,
                       std::span<const std::string> steps,
                       std::string_view candidate) = 0;
};

// Raised when a generator breaks its cardinality contract.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN maps to 0.
double clamp_score(double raw);

// Whitespace-delimited unit count; the token measure used by simulators.
std::int64_t count_whitespace_units(std::string_view text);

}  // namespace pats
