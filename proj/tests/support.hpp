// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pats/model.hpp"

namespace pats::testing {

// Generator driven by a callback: text(step_index, n, j) and a fixed token count.
class ScriptedGenerator final : public StepGenerator {
 public:
  using TextFn = std::function<std::string(int step, int n, int j)>;
  ScriptedGenerator(TextFn text, std::int64_t tokens)
      : text_(std::move(text)), tokens_(tokens) {}

  std::vector<CandidateStep> generate(const StepContext& context, int n, double,
                                      std::uint64_t) override {
    ++calls;
    std::vector<CandidateStep> out;
    for (int j = 0; j < n; ++j) out.push_back({text_(context.step_index, n, j), tokens_, 0.0});
    return out;
  }

  int calls = 0;

 private:
  TextFn text_;
  std::int64_t tokens_;
};

class ScriptedScorer final : public StepScorer {
 public:
  using ScoreFn = std::function<double(std::string_view candidate)>;
  explicit ScriptedScorer(ScoreFn fn) : fn_(std::move(fn)) {}
  double score(const Problem&, std::span<const std::string>,
               std::string_view candidate) override {
    return fn_(candidate);
  }

 private:
  ScoreFn fn_;
};

// Returns n-1 candidates; used to trip the cardinality check.
class ShortGenerator final : public StepGenerator {
 public:
  std::vector<CandidateStep> generate(const StepContext&, int n, double,
                                      std::uint64_t) override {
    return std::vector<CandidateStep>(static_cast<std::size_t>(n - 1), {"x", 1, 0.0});
  }
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pats-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// next_mode written out independently from the library, thresholds inlined.
inline int reference_next_mode(int current, double score) {
  if (score >= 0.85) return current == 0 ? 0 : current - 1;
  if (score < 0.75) return 2;
  return current;
}

}  // namespace pats::testing
