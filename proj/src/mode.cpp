// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/mode.hpp"

#include <stdexcept>
#include <string>

namespace pats {

std::string_view to_string(ThinkingMode mode) {
  switch (mode) {
    case ThinkingMode::simple:
      return "simple";
    case ThinkingMode::medium:
      return "medium";
    case ThinkingMode::complex:
      return "complex";
  }
  return "unknown";
}

ThinkingMode parse_mode(std::string_view name) {
  for (ThinkingMode mode : kAllModes) {
    if (to_string(mode) == name) return mode;
  }
  throw std::invalid_argument("unknown thinking mode '" + std::string(name) +
                              "'");
}

}  // namespace pats
