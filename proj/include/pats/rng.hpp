// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace pats {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view bytes);

// Mixes a base seed with a sequence of discriminators into a child seed.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts);

// Seed of one (strategy, problem) episode inside a run.
std::uint64_t episode_seed(std::uint64_t run_seed, std::string_view strategy,
                           std::string_view problem_id);

// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

// Standard normal via Box-Muller; libstdc++'s normal_distribution caches
// state between calls, which would couple successive draws.
double standard_normal(Rng& rng);

}  // namespace pats
