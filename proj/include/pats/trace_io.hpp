// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pats/analysis.hpp"
#include "pats/types.hpp"

namespace pats {

inline constexpr int kTraceSchemaVersion = 1;

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One JSON object on one line, no trailing newline.
std::string serialize_trace(const ReasoningTrace& trace);
// Throws TraceFormatError on malformed input or a schema_version mismatch.
ReasoningTrace parse_trace(std::string_view line);

void write_trace_file(const std::filesystem::path& path,
                      std::span<const ReasoningTrace> traces);
std::vector<ReasoningTrace> read_trace_file(const std::filesystem::path& path);

// Report files: report.txt (table) and report.jsonl with one "result" record
// per (benchmark, strategy), one "average" record per strategy and one
// "stages" record per strategy.
struct StrategyStages {
  std::string strategy;
  StageDistribution distribution;
};

std::string render_report_jsonl(const AggregateReport& report,
                                std::span<const StrategyStages> stages);
std::string render_report_text(const AggregateReport& report,
                               std::span<const StrategyStages> stages);

// The "result" records of a report.jsonl file.
std::vector<BenchmarkResult> read_report_results(
    const std::filesystem::path& path);

}  // namespace pats
