// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pats/types.hpp"

namespace pats {

struct DatasetRecord {
  std::string id;
  std::string question;
  std::string answer;

  Problem as_problem() const { return {id, question, answer}; }
  bool operator==(const DatasetRecord&) const = default;
};

class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  // 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-delimited JSON, one {id, question, answer} object per line. Blank lines
// are skipped. Records come back in file order; duplicate ids are rejected.
std::vector<DatasetRecord> ingest_dataset(const std::filesystem::path& path);

}  // namespace pats
