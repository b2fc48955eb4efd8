// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pats/config.hpp"
#include "pats/remote.hpp"
#include "pats/synthetic.hpp"

namespace pats {

struct StrategySpec {
  std::string name;
  // Per-strategy SearchConfig; starts from the run-level one plus overrides.
  SearchConfig search;
};

// Problems k = 0..n_problems-1 cycle through `profiles`.
struct SyntheticSuite {
  std::string name;
  std::vector<DifficultyProfile> profiles;
  int n_steps = 6;
  int n_problems = 100;
  std::uint64_t seed = 0;
  int tokens_per_candidate = 30;

  std::vector<SyntheticProblem> materialize() const;
};

struct DatasetSource {
  std::string name;
  std::filesystem::path path;
};

using BenchmarkSource = std::variant<SyntheticSuite, DatasetSource>;

std::string_view benchmark_name(const BenchmarkSource& source);

struct BackendConfig {
  enum class Kind { synthetic, remote };
  Kind kind = Kind::synthetic;
  NoiseModel noise;
  RemoteEndpointConfig generator;
  GeneratorOptions generator_options;
  RemoteEndpointConfig scorer;
};

struct RunConfig {
  std::vector<StrategySpec> strategies;
  std::vector<BenchmarkSource> benchmarks;
  SearchConfig search;
  BackendConfig backend;
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::filesystem::path output_dir = "pats-out";

  // Everything checkable before the first episode: strategy names, dataset
  // paths, backend/benchmark compatibility, API keys. Throws
  // std::invalid_argument.
  void validate() const;
};

// Parses the JSON config document. Relative dataset paths resolve against
// `base_dir`. Throws std::invalid_argument on schema errors.
RunConfig parse_run_config(std::string_view text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace pats
