// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/answer.hpp"

#include <cctype>
#include <regex>

namespace pats {

namespace {

constexpr std::string_view kBoxed = "\\boxed{";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<std::string> boxed_content(std::string_view text) {
  const std::size_t start = text.rfind(kBoxed);
  if (start == std::string_view::npos) return std::nullopt;
  int depth = 1;
  const std::size_t open = start + kBoxed.size();
  for (std::size_t i = open; i < text.size(); ++i) {
    if (text[i] == '{') {
      ++depth;
    } else if (text[i] == '}' && --depth == 0) {
      return std::string(text.substr(open, i - open));
    }
  }
  return std::nullopt;
}

std::string canonical_number(std::string s) {
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.erase(0, 1);
  }
  std::string integer = s;
  std::string fraction;
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    integer = s.substr(0, dot);
    fraction = s.substr(dot + 1);
  }
  while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
  const auto nz = integer.find_first_not_of('0');
  integer = nz == std::string::npos ? "0" : integer.substr(nz);
  std::string out = integer;
  if (!fraction.empty()) out += "." + fraction;
  if (negative && out != "0") out.insert(0, "-");
  return out;
}

}  // namespace

std::optional<std::string> extract_answer(std::string_view text,
                                          std::string_view final_prefix) {
  if (auto boxed = boxed_content(text)) return boxed;
  if (final_prefix.empty()) return std::nullopt;

  std::optional<std::string> found;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    if (line.starts_with(final_prefix)) {
      line.remove_prefix(final_prefix.size());
      line = trim(line);
      if (!line.empty() && line.front() == ':') line.remove_prefix(1);
      found = std::string(trim(line));
    }
    pos = end + 1;
  }
  return found;
}

std::string normalize_answer(std::string_view answer) {
  std::string_view s = trim(answer);
  while (s.size() >= 2 && s.front() == '$' && s.back() == '$') {
    s = trim(s.substr(1, s.size() - 2));
  }

  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(c));
  }
  while (!out.empty() && std::string_view(".,;:!?").find(out.back()) !=
                             std::string_view::npos) {
    out.pop_back();
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();

  static const std::regex kGrouped(R"([+-]?\d{1,3}(,\d{3})+(\.\d*)?)");
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+))");
  if (std::regex_match(out, kGrouped)) {
    std::erase(out, ',');
  }
  if (std::regex_match(out, kNumber)) out = canonical_number(out);
  return out;
}

bool check_answer(std::string_view final_text, std::string_view reference) {
  const auto extracted = extract_answer(final_text);
  if (!extracted) return false;
  const std::string got = normalize_answer(*extracted);
  return !got.empty() && got == normalize_answer(reference);
}

}  // namespace pats
