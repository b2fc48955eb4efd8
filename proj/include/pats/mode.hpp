// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pats {

// Per-step reasoning strategy. Ordered by effort: simple < medium < complex.
enum class ThinkingMode : std::uint8_t { simple = 0, medium = 1, complex = 2 };

inline constexpr std::array<ThinkingMode, 3> kAllModes = {
    ThinkingMode::simple, ThinkingMode::medium, ThinkingMode::complex};

constexpr std::size_t mode_index(ThinkingMode mode) {
  return static_cast<std::size_t>(mode);
}

std::string_view to_string(ThinkingMode mode);

// Throws std::invalid_argument on an unknown name.
ThinkingMode parse_mode(std::string_view name);

}  // namespace pats
