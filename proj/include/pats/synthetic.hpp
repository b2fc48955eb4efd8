// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pats/config.hpp"
#include "pats/model.hpp"
#include "pats/rng.hpp"
#include "pats/strategy.hpp"

namespace pats {

// A task with planted per-step difficulty d_i: each candidate at step i is
// correct with probability 1 - d_i, independently.
struct SyntheticProblem {
  std::string id;
  std::vector<double> difficulties;
  std::string answer;
  int tokens_per_candidate = 30;

  void validate(int max_steps) const;
  Problem as_problem() const;
};

// Reward scores: Normal(mu_correct, sigma) for correct candidates and
// Normal(mu_incorrect, sigma) otherwise, clamped to [0, 1].
struct NoiseModel {
  double mu_correct = 0.9;
  double mu_incorrect = 0.3;
  double sigma = 0.05;

  void validate() const;
  bool operator==(const NoiseModel&) const = default;
};

struct DifficultyProfile {
  enum class Kind { constant, ramp, spike };
  Kind kind = Kind::constant;
  // constant: {d}; ramp: {lo, hi}; spike: {base, peak, relative position}
  std::vector<double> params;

  static DifficultyProfile constant(double d) { return {Kind::constant, {d}}; }
  static DifficultyProfile ramp(double lo, double hi) {
    return {Kind::ramp, {lo, hi}};
  }
  static DifficultyProfile spike(double base, double peak, double position) {
    return {Kind::spike, {base, peak, position}};
  }

  // Per-step difficulties for n steps. The spike lands at 0-based index
  // min(floor(position * n), n - 1).
  std::vector<double> difficulties(int n_steps) const;
  std::string describe() const;
};

DifficultyProfile::Kind parse_profile_kind(std::string_view name);
std::string_view to_string(DifficultyProfile::Kind kind);

// Deterministic in (seed, profile, n_steps). The seed picks the answer and,
// when `id` is empty, the id.
SyntheticProblem gen_problem(std::uint64_t seed,
                             const DifficultyProfile& profile, int n_steps,
                             std::string id = {},
                             int tokens_per_candidate = 30);

struct CandidateDraw {
  bool correct = false;
  double score = 0.0;
};

CandidateDraw candidate_draw(double difficulty, const NoiseModel& noise,
                             Rng& rng);

// Parsed form of the tag every synthetic candidate starts with.
struct SyntheticTag {
  std::string problem_id;
  int step = 0;
  int draw = 0;
  bool correct = false;
  double score = 0.0;
};

std::optional<SyntheticTag> parse_synthetic_tag(std::string_view text);

class SyntheticEnvironment {
 public:
  explicit SyntheticEnvironment(NoiseModel noise = {});

  void add(SyntheticProblem problem);
  // Throws std::invalid_argument for unknown ids.
  const SyntheticProblem& find(std::string_view id) const;
  const NoiseModel& noise() const { return noise_; }
  std::size_t size() const { return problems_.size(); }

 private:
  NoiseModel noise_;
  std::map<std::string, SyntheticProblem, std::less<>> problems_;
};

// Candidate text is "[syn|<id>|s<step>|d<draw>|ok|<score>] w w ... " padded to
// tokens_per_candidate whitespace units. On the last step the final unit is
// \boxed{...}, holding the reference answer only if this candidate and every
// accepted step are correct. Each draw uses the sub-seed derive(seed, {draw}).
class SyntheticGenerator final : public StepGenerator {
 public:
  explicit SyntheticGenerator(const SyntheticEnvironment& env) : env_(env) {}

  std::vector<CandidateStep> generate(const StepContext& context, int n,
                                      double temperature,
                                      std::uint64_t seed) override;

 private:
  const SyntheticEnvironment& env_;
};

// Reads the planted score back out of the candidate tag. Pure.
class SyntheticScorer final : public StepScorer {
 public:
  double score(const Problem& problem, std::span<const std::string> steps,
               std::string_view candidate) override;
};

// Closed-form accuracy of a fixed width w when scores separate correct from
// incorrect candidates perfectly: prod_i (1 - d_i^w). Requires sigma == 0.
double analytic_accuracy(const SyntheticProblem& problem, int width,
                         double sigma = 0.0);

struct OracleEstimate {
  double accuracy = 0.0;
  double mean_tokens = 0.0;
  int n_episodes = 0;
};

// Monte Carlo reference: runs the real engine n_episodes times with seeds
// derive_seed(seed, {e}) and averages correctness and total tokens.
OracleEstimate mc_oracle(const SyntheticProblem& problem,
                         std::string_view strategy, const SearchConfig& config,
                         const NoiseModel& noise, int n_episodes,
                         std::uint64_t seed);

}  // namespace pats
