// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/synthetic.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "pats/search.hpp"

namespace pats {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

void SyntheticProblem::validate(int max_steps) const {
  if (id.empty() || id.find_first_of("|] \t\n") != std::string::npos) {
    throw std::invalid_argument("synthetic problem id must be nonempty without '|', ']' or spaces");
  }
  if (difficulties.empty() ||
      difficulties.size() > static_cast<std::size_t>(max_steps)) {
    throw std::invalid_argument(fmt::format(
        "synthetic problem {}: needs 1..{} steps, has {}", id, max_steps,
        difficulties.size()));
  }
  for (double d : difficulties) {
    if (!in_unit_interval(d)) {
      throw std::invalid_argument(
          fmt::format("synthetic problem {}: difficulty {} outside [0, 1]", id, d));
    }
  }
  if (tokens_per_candidate < 2) {
    throw std::invalid_argument("tokens_per_candidate must be >= 2");
  }
}

Problem SyntheticProblem::as_problem() const {
  return {id, fmt::format("synthetic task {} with {} steps", id, difficulties.size()),
          answer};
}

void NoiseModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("noise sigma must be >= 0");
  }
  if (!(mu_incorrect < mu_correct)) {
    throw std::invalid_argument("noise requires mu_incorrect < mu_correct");
  }
}

std::vector<double> DifficultyProfile::difficulties(int n_steps) const {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const std::size_t arity = kind == Kind::constant ? 1 : kind == Kind::ramp ? 2 : 3;
  if (params.size() != arity) {
    throw std::invalid_argument(fmt::format("{} profile takes {} parameters",
                                            to_string(kind), arity));
  }
  for (double p : params) {
    if (!in_unit_interval(p)) {
      throw std::invalid_argument(
          fmt::format("profile parameter {} outside [0, 1]", p));
    }
  }
  const auto n = static_cast<std::size_t>(n_steps);
  std::vector<double> d(n);
  switch (kind) {
    case Kind::constant:
      std::fill(d.begin(), d.end(), params[0]);
      break;
    case Kind::ramp:
      for (std::size_t k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        d[k] = params[0] + (params[1] - params[0]) * t;
      }
      break;
    case Kind::spike: {
      std::fill(d.begin(), d.end(), params[0]);
      auto at = static_cast<std::size_t>(std::floor(params[2] * static_cast<double>(n)));
      d[std::min(at, n - 1)] = params[1];
      break;
    }
  }
  return d;
}

std::string DifficultyProfile::describe() const {
  std::string out(to_string(kind));
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += shortest(params[i]);
  }
  return out + ')';
}

DifficultyProfile::Kind parse_profile_kind(std::string_view name) {
  using K = DifficultyProfile::Kind;
  for (K k : {K::constant, K::ramp, K::spike}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown difficulty profile '" + std::string(name) + "'");
}

std::string_view to_string(DifficultyProfile::Kind kind) {
  switch (kind) {
    case DifficultyProfile::Kind::constant:
      return "constant";
    case DifficultyProfile::Kind::ramp:
      return "ramp";
    case DifficultyProfile::Kind::spike:
      return "spike";
  }
  return "unknown";
}

SyntheticProblem gen_problem(std::uint64_t seed,
                             const DifficultyProfile& profile, int n_steps,
                             std::string id, int tokens_per_candidate) {
  SyntheticProblem p;
  p.id = id.empty() ? fmt::format("syn-{:016x}", seed) : std::move(id);
  p.difficulties = profile.difficulties(n_steps);
  p.answer = std::to_string(splitmix64(seed) % 100000);
  p.tokens_per_candidate = tokens_per_candidate;
  p.validate(n_steps);
  return p;
}

CandidateDraw candidate_draw(double difficulty, const NoiseModel& noise,
                             Rng& rng) {
  CandidateDraw draw;
  draw.correct = uniform01(rng) < 1.0 - difficulty;
  const double mu = draw.correct ? noise.mu_correct : noise.mu_incorrect;
  const double z = standard_normal(rng);
  draw.score = clamp_score(mu + noise.sigma * z);
  return draw;
}

std::optional<SyntheticTag> parse_synthetic_tag(std::string_view text) {
  if (!text.starts_with("[syn|")) return std::nullopt;
  const auto close = text.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view body = text.substr(5, close - 5);

  std::vector<std::string_view> fields;
  while (true) {
    const auto bar = body.find('|');
    fields.push_back(body.substr(0, bar));
    if (bar == std::string_view::npos) break;
    body.remove_prefix(bar + 1);
  }
  if (fields.size() != 5) return std::nullopt;

  SyntheticTag tag;
  tag.problem_id = std::string(fields[0]);
  auto parse_int = [](std::string_view f, char prefix, int& out) {
    if (f.empty() || f.front() != prefix) return false;
    auto [p, ec] = std::from_chars(f.data() + 1, f.data() + f.size(), out);
    return ec == std::errc() && p == f.data() + f.size();
  };
  if (!parse_int(fields[1], 's', tag.step) || !parse_int(fields[2], 'd', tag.draw)) {
    return std::nullopt;
  }
  if (fields[3] == "ok") {
    tag.correct = true;
  } else if (fields[3] != "bad") {
    return std::nullopt;
  }
  auto [p, ec] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(),
                                 tag.score);
  if (ec != std::errc() || p != fields[4].data() + fields[4].size()) {
    return std::nullopt;
  }
  return tag;
}

SyntheticEnvironment::SyntheticEnvironment(NoiseModel noise) : noise_(noise) {
  noise_.validate();
}

void SyntheticEnvironment::add(SyntheticProblem problem) {
  problem.validate(static_cast<int>(problem.difficulties.size()));
  if (problems_.contains(problem.id)) {
    throw std::invalid_argument("duplicate synthetic problem id " + problem.id);
  }
  auto id = problem.id;
  problems_.emplace(std::move(id), std::move(problem));
}

const SyntheticProblem& SyntheticEnvironment::find(std::string_view id) const {
  auto it = problems_.find(id);
  if (it == problems_.end()) {
    throw std::invalid_argument("unknown synthetic problem '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<CandidateStep> SyntheticGenerator::generate(
    const StepContext& context, int n, double /*temperature*/,
    std::uint64_t seed) {
  const SyntheticProblem& p = env_.find(context.problem.id);
  const int n_steps = static_cast<int>(p.difficulties.size());
  if (context.step_index < 1 || context.step_index > n_steps) {
    throw std::invalid_argument(fmt::format("problem {} has no step {}", p.id,
                                            context.step_index));
  }
  const double difficulty = p.difficulties[context.step_index - 1];
  const bool last = context.step_index == n_steps;

  bool path_correct = true;
  for (const auto& step : context.accepted_steps) {
    const auto tag = parse_synthetic_tag(step);
    path_correct = path_correct && tag && tag->correct;
  }

  std::vector<CandidateStep> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(j)}));
    const CandidateDraw draw = candidate_draw(difficulty, env_.noise(), rng);

    std::string text = fmt::format("[syn|{}|s{}|d{}|{}|{}]", p.id,
                                   context.step_index, j,
                                   draw.correct ? "ok" : "bad",
                                   shortest(draw.score));
    const int filler = p.tokens_per_candidate - 1 - (last ? 1 : 0);
    for (int k = 0; k < filler; ++k) text += " step";
    if (last) {
      const bool right = path_correct && draw.correct;
      text += " \\boxed{" + (right ? p.answer : "not-" + p.answer) + "}";
    }
    CandidateStep c;
    c.tokens = count_whitespace_units(text);
    c.text = std::move(text);
    out.push_back(std::move(c));
  }
  return out;
}

double SyntheticScorer::score(const Problem& /*problem*/,
                              std::span<const std::string> /*steps*/,
                              std::string_view candidate) {
  const auto tag = parse_synthetic_tag(candidate);
  if (!tag) throw std::invalid_argument("candidate carries no synthetic tag");
  return tag->score;
}

double analytic_accuracy(const SyntheticProblem& problem, int width,
                         double sigma) {
  if (sigma != 0.0) {
    throw std::invalid_argument(
        "analytic_accuracy needs sigma == 0; use mc_oracle for noisy scores");
  }
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  double p = 1.0;
  for (double d : problem.difficulties) p *= 1.0 - std::pow(d, width);
  return p;
}

OracleEstimate mc_oracle(const SyntheticProblem& problem,
                         std::string_view strategy, const SearchConfig& config,
                         const NoiseModel& noise, int n_episodes,
                         std::uint64_t seed) {
  if (n_episodes < 1) throw std::invalid_argument("n_episodes must be >= 1");
  SyntheticEnvironment env(noise);
  env.add(problem);
  SyntheticGenerator generator(env);
  SyntheticScorer scorer;
  const Problem task = problem.as_problem();

  std::int64_t correct = 0;
  double tokens = 0.0;
  for (int e = 0; e < n_episodes; ++e) {
    const auto trace = run_named_strategy(
        strategy, task, generator, scorer, config,
        derive_seed(seed, {static_cast<std::uint64_t>(e)}));
    correct += trace.correct ? 1 : 0;
    tokens += static_cast<double>(trace.total_tokens);
  }
  OracleEstimate est;
  est.n_episodes = n_episodes;
  est.accuracy = static_cast<double>(correct) / n_episodes;
  est.mean_tokens = tokens / n_episodes;
  return est;
}

}  // namespace pats
