// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pats {

// Content of the last \boxed{...} (brace-balanced), else the remainder of the
// last line starting with `final_prefix` (a leading ':' is dropped).
std::optional<std::string> extract_answer(
    std::string_view text, std::string_view final_prefix = "Final Answer");

// Trim, collapse internal whitespace, strip trailing punctuation, drop
// thousands separators in numbers, and canonicalize numeric forms so that
// "42.0", "42." and "+42" all become "42".
std::string normalize_answer(std::string_view answer);

// Normalized exact match between the extracted answer and the reference.
// Unextractable answers are wrong.
bool check_answer(std::string_view final_text, std::string_view reference);

}  // namespace pats
