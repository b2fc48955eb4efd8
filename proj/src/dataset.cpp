// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/dataset.hpp"

#include <fstream>
#include <set>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace pats {

std::vector<DatasetRecord> ingest_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset " + path.string(), 0);

  std::vector<DatasetRecord> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DatasetError(fmt::format("{}: line {}: invalid JSON: {}", path.string(),
                                     line_no, e.what()),
                         line_no);
    }
    auto field = [&](const char* key) -> std::string {
      if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
        throw DatasetError(fmt::format("{}: line {}: missing string field '{}'",
                                       path.string(), line_no, key),
                           line_no);
      }
      return j[key].get<std::string>();
    };
    DatasetRecord r{field("id"), field("question"), field("answer")};
    if (r.answer.empty()) {
      throw DatasetError(fmt::format("{}: line {}: empty answer", path.string(), line_no),
                         line_no);
    }
    if (!seen.insert(r.id).second) {
      throw DatasetError(fmt::format("{}: line {}: duplicate id '{}'", path.string(),
                                     line_no, r.id),
                         line_no);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace pats
