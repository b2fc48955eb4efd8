// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/search.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include <fmt/core.h>

#include "pats/answer.hpp"
#include "pats/rng.hpp"

namespace pats {

namespace {

// Stream discriminators for derive_seed within one episode.
constexpr std::uint64_t kStrategyStream = 0x5354524154ULL;
constexpr std::uint64_t kExpandStream = 1;
constexpr std::uint64_t kPenaltyStream = 2;

bool has_line_prefix(std::string_view text, std::string_view prefix) {
  if (prefix.empty()) return false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.starts_with(prefix)) return true;
    pos = end + 1;
  }
  return false;
}

}  // namespace

double clamp_score(double raw) {
  if (std::isnan(raw)) return 0.0;
  if (raw < 0.0) return 0.0;
  if (raw > 1.0) return 1.0;
  return raw;
}

std::int64_t count_whitespace_units(std::string_view text) {
  std::int64_t units = 0;
  bool in_unit = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_unit) ++units;
    in_unit = !space;
  }
  return units;
}

int width_of(ThinkingMode mode, const SearchConfig& config) {
  switch (mode) {
    case ThinkingMode::simple:
      return config.width_simple;
    case ThinkingMode::medium:
      return config.width_medium;
    case ThinkingMode::complex:
      return config.width_complex;
  }
  return config.width_complex;
}

ThinkingMode next_mode(ThinkingMode current, double score,
                       const SearchConfig& config) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw std::invalid_argument(fmt::format("score {} outside [0, 1]", score));
  }
  if (score >= config.value_good) {
    switch (current) {
      case ThinkingMode::complex:
        return ThinkingMode::medium;
      case ThinkingMode::medium:
      case ThinkingMode::simple:
        return ThinkingMode::simple;
    }
  }
  if (score < config.value_low) return ThinkingMode::complex;
  return current;
}

std::vector<CandidateStep> expand(const StepContext& context, ThinkingMode mode,
                                  StepGenerator& generator, StepScorer& scorer,
                                  const SearchConfig& config,
                                  std::uint64_t seed) {
  const int width = width_of(mode, config);
  auto candidates =
      generator.generate(context, width, config.temperature, seed);
  if (candidates.size() != static_cast<std::size_t>(width)) {
    throw GenerationError(fmt::format("generator returned {} candidates, {} requested",
                                      candidates.size(), width));
  }
  for (auto& c : candidates) {
    if (c.tokens < 0) throw GenerationError("negative token count");
    c.score = clamp_score(
        scorer.score(context.problem, context.accepted_steps, c.text));
  }
  return candidates;
}

std::size_t select_best(std::span<const CandidateStep> candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_best: empty candidate list");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].score > candidates[best].score) best = i;
  }
  return best;
}

StepRecord apply_penalty(StepRecord step, const StepContext& context,
                         StepGenerator& generator, StepScorer& scorer,
                         const SearchConfig& config,
                         int already_penalized_count, std::uint64_t seed) {
  if (!(step.effective_score() < config.value_bad)) {
    throw std::invalid_argument(
        fmt::format("apply_penalty: step score {} is not below value_bad {}",
                    step.effective_score(), config.value_bad));
  }
  int round_limit = 0;
  switch (config.penalty_policy) {
    case PenaltyPolicy::never:
      return step;
    case PenaltyPolicy::once:
      round_limit = 1;
      break;
    case PenaltyPolicy::until_threshold:
      round_limit = config.penalty_iteration_cap;
      break;
  }

  for (int round = already_penalized_count; round < round_limit; ++round) {
    auto fresh = expand(context, ThinkingMode::complex, generator, scorer,
                        config, derive_seed(seed, {static_cast<std::uint64_t>(round)}));
    if (!step.penalty_candidates) step.penalty_candidates.emplace();
    auto& pool = *step.penalty_candidates;
    const std::size_t offset = pool.size();
    pool.insert(pool.end(), fresh.begin(), fresh.end());
    step.penalized = true;

    if (config.penalty_selection_pool == PenaltyPool::fresh_only) {
      step.penalty_selected = offset + select_best(fresh);
    } else {
      // Originals precede regenerated candidates, so ties keep the original.
      const std::size_t best = select_best(pool);
      if (pool[best].score > step.candidates.at(step.selected).score) {
        step.penalty_selected = best;
      } else {
        step.penalty_selected.reset();
      }
    }
    if (step.effective_score() >= config.value_bad) break;
  }
  return step;
}

std::optional<Termination> is_terminal(const CandidateStep& selected,
                                       int steps_so_far,
                                       const SearchConfig& config) {
  const std::string_view text = selected.text;
  if ((!config.answer_marker.empty() &&
       text.find(config.answer_marker) != std::string_view::npos) ||
      has_line_prefix(text, config.final_answer_prefix)) {
    return Termination::answered;
  }
  if (steps_so_far >= config.max_steps) return Termination::step_cap;
  return std::nullopt;
}

ReasoningTrace run_episode(const Problem& problem, const Strategy& strategy,
                           StepGenerator& generator, StepScorer& scorer,
                           const SearchConfig& base_config,
                           std::uint64_t seed) {
  SearchConfig config = base_config;
  if (strategy.penalty_override) config.penalty_policy = *strategy.penalty_override;
  config.validate();
  if (!strategy.decide_next) {
    throw std::invalid_argument("strategy '" + strategy.name +
                                "' has no decision rule");
  }

  ReasoningTrace trace;
  trace.problem_id = problem.id;
  trace.strategy_name = strategy.name;
  trace.seed = seed;

  Rng strategy_rng(derive_seed(seed, {kStrategyStream}));
  std::vector<std::string> accepted;
  ThinkingMode mode = strategy.initial_mode;

  for (int i = 1;; ++i) {
    const StepContext context{problem, accepted, i};
    StepRecord record;
    record.index = i;
    record.mode = mode;
    record.width = width_of(mode, config);
    try {
      const auto step_seed = static_cast<std::uint64_t>(i);
      record.candidates = expand(context, mode, generator, scorer, config,
                                 derive_seed(seed, {kExpandStream, step_seed}));
      record.selected = select_best(record.candidates);
      if (strategy.uses_penalty &&
          record.effective_score() < config.value_bad) {
        record = apply_penalty(std::move(record), context, generator, scorer,
                               config, 0,
                               derive_seed(seed, {kPenaltyStream, step_seed}));
      }
    } catch (const std::exception& e) {
      trace.terminated = Termination::step_cap;
      trace.total_tokens = recompute_total_tokens(trace);
      throw EpisodeError(fmt::format("episode {} / {} failed at step {}: {}",
                                     problem.id, strategy.name, i, e.what()),
                         std::move(trace));
    }

    trace.total_tokens += record.generated_tokens();
    const double score = record.effective_score();
    const ThinkingMode basis =
        record.penalized ? ThinkingMode::complex : record.mode;
    std::string committed_text = record.effective().text;

    std::optional<Termination> verdict =
        is_terminal(record.effective(), i, config);
    if (verdict == Termination::answered) {
      trace.final_answer =
          extract_answer(committed_text, config.final_answer_prefix);
      trace.correct = check_answer(committed_text, problem.answer);
    } else if (config.token_budget > 0 &&
               trace.total_tokens >= config.token_budget) {
      verdict = Termination::budget_cap;
    }
    trace.steps.push_back(std::move(record));
    accepted.push_back(std::move(committed_text));

    if (verdict) {
      trace.terminated = *verdict;
      break;
    }
    mode = strategy.decide_next(basis, score, config, strategy_rng);
  }
  return trace;
}

void check_trace_invariants(const ReasoningTrace& trace,
                            const SearchConfig& config) {
  auto fail = [&](const std::string& what) {
    throw std::logic_error(fmt::format("trace {}/{}: {}", trace.strategy_name,
                                       trace.problem_id, what));
  };
  if (trace.steps.empty()) fail("no steps");
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const StepRecord& s = trace.steps[k];
    if (s.index != static_cast<int>(k) + 1) fail("step indices not consecutive");
    if (s.width != width_of(s.mode, config)) fail("width does not match mode");
    if (s.candidates.size() != static_cast<std::size_t>(s.width)) {
      fail("candidate count does not match width");
    }
    if (s.selected >= s.candidates.size()) fail("selected index out of range");
    if (s.penalized != s.penalty_candidates.has_value()) {
      fail("penalized flag and penalty candidates disagree");
    }
    if (s.penalty_candidates) {
      const auto n = s.penalty_candidates->size();
      const auto w = static_cast<std::size_t>(config.width_complex);
      if (n == 0 || n % w != 0) fail("penalty candidates not whole complex rounds");
      if (config.penalty_policy == PenaltyPolicy::once && n != w) {
        fail("more than one penalty round under policy once");
      }
      if (s.penalty_selected && *s.penalty_selected >= n) {
        fail("penalty_selected out of range");
      }
    } else if (s.penalty_selected) {
      fail("penalty_selected without penalty candidates");
    }
    auto check_candidate = [&](const CandidateStep& c) {
      if (c.tokens < 0) fail("negative token count");
      if (!(c.score >= 0.0 && c.score <= 1.0)) fail("score outside [0, 1]");
    };
    for (const auto& c : s.candidates) check_candidate(c);
    if (s.penalty_candidates) {
      for (const auto& c : *s.penalty_candidates) check_candidate(c);
    }
  }
  if (trace.total_tokens != recompute_total_tokens(trace)) {
    fail("total_tokens does not match candidate token sum");
  }
}

}  // namespace pats
