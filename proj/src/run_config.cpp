// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "pats/strategy.hpp"

namespace pats {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

void only_keys(const json& j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) bad(fmt::format("unknown key '{}' in {}", key, where));
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(fmt::format("'{}': {}", key, e.what()));
  }
}

void read_ms(const json& j, const char* key, std::chrono::milliseconds& out) {
  if (!j.contains(key)) return;
  std::int64_t ms = 0;
  read(j, key, ms);
  out = std::chrono::milliseconds(ms);
}

void apply_search(const json& j, SearchConfig& c) {
  only_keys(j, "search",
            {"width_simple", "width_medium", "width_complex", "value_good", "value_low",
             "value_bad", "initial_mode", "max_steps", "token_budget", "temperature",
             "penalty_policy", "penalty_iteration_cap", "penalty_selection_pool",
             "answer_marker", "final_answer_prefix"});
  read(j, "width_simple", c.width_simple);
  read(j, "width_medium", c.width_medium);
  read(j, "width_complex", c.width_complex);
  read(j, "value_good", c.value_good);
  read(j, "value_low", c.value_low);
  read(j, "value_bad", c.value_bad);
  read(j, "max_steps", c.max_steps);
  read(j, "token_budget", c.token_budget);
  read(j, "temperature", c.temperature);
  read(j, "penalty_iteration_cap", c.penalty_iteration_cap);
  read(j, "answer_marker", c.answer_marker);
  read(j, "final_answer_prefix", c.final_answer_prefix);
  std::string name;
  if (j.contains("initial_mode")) {
    read(j, "initial_mode", name);
    c.initial_mode = parse_mode(name);
  }
  if (j.contains("penalty_policy")) {
    read(j, "penalty_policy", name);
    c.penalty_policy = parse_penalty_policy(name);
  }
  if (j.contains("penalty_selection_pool")) {
    read(j, "penalty_selection_pool", name);
    c.penalty_selection_pool = parse_penalty_pool(name);
  }
}

RemoteEndpointConfig parse_endpoint(const json& j, std::string_view where,
                                    GeneratorOptions* options) {
  if (options) {
    only_keys(j, where,
              {"base_url", "model", "api_key_env", "timeout_ms", "max_retries",
               "retry_backoff_ms", "max_in_flight", "system_prompt", "stop",
               "backend_supports_n"});
  } else {
    only_keys(j, where,
              {"base_url", "model", "api_key_env", "timeout_ms", "max_retries",
               "retry_backoff_ms", "max_in_flight"});
  }
  RemoteEndpointConfig cfg;
  read(j, "base_url", cfg.base_url);
  read(j, "model", cfg.model_name);
  read(j, "api_key_env", cfg.api_key_env);
  read_ms(j, "timeout_ms", cfg.timeout);
  read(j, "max_retries", cfg.max_retries);
  read(j, "max_in_flight", cfg.max_in_flight);
  if (j.contains("retry_backoff_ms")) {
    std::vector<std::int64_t> ms;
    read(j, "retry_backoff_ms", ms);
    cfg.retry_backoff.clear();
    for (auto v : ms) cfg.retry_backoff.emplace_back(v);
  }
  if (options) {
    read(j, "system_prompt", options->system_prompt);
    read(j, "stop", options->stop);
    read(j, "backend_supports_n", options->backend_supports_n);
  }
  return cfg;
}

DifficultyProfile parse_profile(const json& j) {
  only_keys(j, "profile", {"kind", "params"});
  DifficultyProfile p;
  std::string kind;
  read(j, "kind", kind);
  p.kind = parse_profile_kind(kind);
  read(j, "params", p.params);
  p.difficulties(1);  // validates arity and range
  return p;
}

}  // namespace

std::vector<SyntheticProblem> SyntheticSuite::materialize() const {
  if (profiles.empty()) bad("synthetic suite '" + name + "' has no profiles");
  std::vector<SyntheticProblem> out;
  out.reserve(static_cast<std::size_t>(n_problems));
  for (int k = 0; k < n_problems; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out.push_back(gen_problem(derive_seed(seed, {uk}), profiles[uk % profiles.size()],
                              n_steps, fmt::format("{}-{:05d}", name, k),
                              tokens_per_candidate));
  }
  return out;
}

std::string_view benchmark_name(const BenchmarkSource& source) {
  return std::visit([](const auto& s) -> std::string_view { return s.name; }, source);
}

void RunConfig::validate() const {
  search.validate();
  if (parallelism < 1) bad("parallelism must be >= 1");
  if (strategies.empty()) bad("no strategies");
  std::set<std::string> names;
  for (const auto& s : strategies) {
    if (!is_known_strategy(s.name)) bad("unknown strategy '" + s.name + "'");
    if (!names.insert(s.name).second) bad("strategy '" + s.name + "' listed twice");
    s.search.validate();
  }
  if (benchmarks.empty()) bad("no benchmarks");
  std::set<std::string, std::less<>> bench_names;
  for (const auto& b : benchmarks) {
    const auto name = benchmark_name(b);
    if (name.empty()) bad("benchmark without a name");
    if (!bench_names.insert(std::string(name)).second) {
      bad("benchmark '" + std::string(name) + "' listed twice");
    }
    if (const auto* suite = std::get_if<SyntheticSuite>(&b)) {
      if (backend.kind != BackendConfig::Kind::synthetic) {
        bad("synthetic suite '" + suite->name + "' needs the synthetic backend");
      }
      if (suite->n_problems < 1) bad("suite '" + suite->name + "' needs n_problems >= 1");
      if (suite->profiles.empty()) bad("suite '" + suite->name + "' has no profiles");
      for (const auto& s : strategies) {
        if (suite->n_steps < 1 || suite->n_steps > s.search.max_steps) {
          bad(fmt::format("suite '{}': n_steps must be in [1, max_steps={}]", suite->name,
                          s.search.max_steps));
        }
      }
    } else {
      const auto& ds = std::get<DatasetSource>(b);
      if (backend.kind != BackendConfig::Kind::remote) {
        bad("dataset '" + ds.name + "' needs the remote backend");
      }
      if (!std::filesystem::exists(ds.path)) {
        bad("dataset '" + ds.name + "': file " + ds.path.string() + " does not exist");
      }
    }
  }
  if (backend.kind == BackendConfig::Kind::synthetic) {
    backend.noise.validate();
  } else {
    try {
      backend.generator.validate();
      backend.scorer.validate();
      resolve_api_key(backend.generator);
      resolve_api_key(backend.scorer);
    } catch (const RemoteError& e) {
      bad(e.what());
    }
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  only_keys(doc, "run config",
            {"seed", "parallelism", "output_dir", "search", "strategies", "benchmarks",
             "backend"});
  RunConfig cfg;
  read(doc, "seed", cfg.seed);
  read(doc, "parallelism", cfg.parallelism);
  if (doc.contains("output_dir")) {
    std::string out;
    read(doc, "output_dir", out);
    cfg.output_dir = out;
  }
  if (doc.contains("search")) apply_search(doc["search"], cfg.search);

  if (!doc.contains("strategies") || !doc["strategies"].is_array()) {
    bad("'strategies' must be an array");
  }
  for (const auto& s : doc["strategies"]) {
    StrategySpec spec;
    spec.search = cfg.search;
    if (s.is_string()) {
      spec.name = s.get<std::string>();
    } else {
      only_keys(s, "strategy", {"name", "search"});
      read(s, "name", spec.name);
      if (s.contains("search")) apply_search(s["search"], spec.search);
    }
    cfg.strategies.push_back(std::move(spec));
  }

  if (!doc.contains("benchmarks") || !doc["benchmarks"].is_array()) {
    bad("'benchmarks' must be an array");
  }
  for (const auto& b : doc["benchmarks"]) {
    only_keys(b, "benchmark", {"name", "synthetic", "dataset"});
    std::string name;
    read(b, "name", name);
    if (b.contains("synthetic") == b.contains("dataset")) {
      bad("benchmark '" + name + "' needs exactly one of 'synthetic' or 'dataset'");
    }
    if (b.contains("synthetic")) {
      const auto& sj = b["synthetic"];
      only_keys(sj, "synthetic",
                {"profiles", "n_steps", "n_problems", "seed", "tokens_per_candidate"});
      SyntheticSuite suite;
      suite.name = name;
      read(sj, "n_steps", suite.n_steps);
      read(sj, "n_problems", suite.n_problems);
      read(sj, "seed", suite.seed);
      read(sj, "tokens_per_candidate", suite.tokens_per_candidate);
      if (!sj.contains("profiles") || !sj["profiles"].is_array()) {
        bad("synthetic suite '" + name + "' needs a 'profiles' array");
      }
      for (const auto& pj : sj["profiles"]) suite.profiles.push_back(parse_profile(pj));
      cfg.benchmarks.emplace_back(std::move(suite));
    } else {
      std::string path;
      read(b, "dataset", path);
      std::filesystem::path p(path);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.benchmarks.emplace_back(DatasetSource{name, p});
    }
  }

  if (doc.contains("backend")) {
    const auto& bj = doc["backend"];
    only_keys(bj, "backend", {"kind", "noise", "generator", "scorer"});
    std::string kind = "synthetic";
    read(bj, "kind", kind);
    if (kind == "synthetic") {
      cfg.backend.kind = BackendConfig::Kind::synthetic;
      if (bj.contains("noise")) {
        only_keys(bj["noise"], "noise", {"mu_correct", "mu_incorrect", "sigma"});
        read(bj["noise"], "mu_correct", cfg.backend.noise.mu_correct);
        read(bj["noise"], "mu_incorrect", cfg.backend.noise.mu_incorrect);
        read(bj["noise"], "sigma", cfg.backend.noise.sigma);
      }
    } else if (kind == "remote") {
      cfg.backend.kind = BackendConfig::Kind::remote;
      if (!bj.contains("generator") || !bj.contains("scorer")) {
        bad("remote backend needs 'generator' and 'scorer'");
      }
      cfg.backend.generator =
          parse_endpoint(bj["generator"], "generator", &cfg.backend.generator_options);
      cfg.backend.scorer = parse_endpoint(bj["scorer"], "scorer", nullptr);
    } else {
      bad("backend kind must be 'synthetic' or 'remote'");
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

}  // namespace pats
