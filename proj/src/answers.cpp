// Copyright 2026 The SmartSwitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smartswitch/answers.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace smartswitch {

namespace {

// Index one past the brace closing the group opened at text[open].
std::optional<std::size_t> match_brace(std::string_view text, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    else if (text[i] == '}' && --depth == 0) return i + 1;
  }
  return std::nullopt;
}

void erase_all(std::string& s, std::string_view what) {
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos))
    s.erase(pos, what.size());
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

// \text{abc} -> abc for the given command.
void unwrap_command(std::string& s, std::string_view command) {
  const std::string open = std::string(command) + "{";
  for (auto pos = s.find(open); pos != std::string::npos; pos = s.find(open, pos)) {
    auto close = match_brace(s, pos + command.size());
    if (!close) return;
    s.erase(*close - 1, 1);
    s.erase(pos, open.size());
  }
}

bool wrapped_in_braces(std::string_view s) {
  return s.size() >= 2 && s.front() == '{' && match_brace(s, 0) == s.size();
}

std::optional<long double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long double value = 0;
  bool digits = false;
  std::size_t i = 0;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == ','); ++i) {
    if (s[i] == ',') {
      // Only thousands separators: exactly three digits must follow.
      if (i == 0 || i + 3 >= s.size() ||
          !std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s[i + 2])) ||
          !std::isdigit(static_cast<unsigned char>(s[i + 3])) ||
          (i + 4 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 4]))))
        return std::nullopt;
      continue;
    }
    value = value * 10 + (s[i] - '0');
    digits = true;
  }
  if (i < s.size() && s[i] == '.') {
    long double scale = 0.1L;
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      value += (s[i] - '0') * scale;
      scale /= 10;
      digits = true;
    }
  }
  if (!digits || i != s.size()) return std::nullopt;
  return negative ? -value : value;
}

}  // namespace

std::optional<std::string> extract_answer(std::string_view text) {
  constexpr std::string_view kBoxed = "\\boxed{";
  auto pos = text.rfind(kBoxed);
  while (pos != std::string_view::npos) {
    const auto open = pos + kBoxed.size() - 1;
    if (auto close = match_brace(text, open))
      return std::string(text.substr(open + 1, *close - open - 2));
    if (pos == 0) break;
    pos = text.rfind(kBoxed, pos - 1);
  }
  return std::nullopt;
}

std::string normalize_answer(std::string_view answer) {
  std::string s;
  s.reserve(answer.size());
  for (char c : answer)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;

  for (std::string_view cmd : {"\\left", "\\right", "\\!", "\\,", "\\;", "\\:", "\\displaystyle", "$"})
    erase_all(s, cmd);
  replace_all(s, "\\dfrac", "\\frac");
  replace_all(s, "\\tfrac", "\\frac");
  for (std::string_view cmd : {"\\text", "\\textbf", "\\mathrm", "\\mathbf", "\\mbox"})
    unwrap_command(s, cmd);
  for (std::string_view mark : {"^{\\circ}", "^\\circ", "\\%", "%", "\\degree"}) erase_all(s, mark);

  while (!s.empty() && s.back() == '.') s.pop_back();
  while (wrapped_in_braces(s)) s = s.substr(1, s.size() - 2);
  // "x=5" -> "5" for a single-letter variable.
  if (s.size() > 2 && std::isalpha(static_cast<unsigned char>(s[0])) && s[1] == '=')
    s.erase(0, 2);
  return s;
}

std::optional<long double> parse_numeric_answer(std::string_view s) {
  if (auto v = parse_decimal(s)) return v;

  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  constexpr std::string_view kFrac = "\\frac";
  if (body.starts_with(kFrac) && body.size() > kFrac.size() && body[kFrac.size()] == '{') {
    const auto num_open = kFrac.size();
    auto num_close = match_brace(body, num_open);
    if (!num_close || *num_close >= body.size() || body[*num_close] != '{') return std::nullopt;
    auto den_close = match_brace(body, *num_close);
    if (!den_close || *den_close != body.size()) return std::nullopt;
    auto num = parse_decimal(body.substr(num_open + 1, *num_close - num_open - 2));
    auto den = parse_decimal(body.substr(*num_close + 1, *den_close - *num_close - 2));
    if (!num || !den || *den == 0) return std::nullopt;
    return (negative ? -1 : 1) * *num / *den;
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(s.substr(0, slash));
    auto den = parse_decimal(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  return std::nullopt;
}

bool answers_equivalent(std::string_view candidate, std::string_view truth) {
  const auto a = normalize_answer(candidate);
  const auto b = normalize_answer(truth);
  if (a == b) return true;
  const auto x = parse_numeric_answer(a);
  const auto y = parse_numeric_answer(b);
  return x && y && std::fabs(static_cast<double>(*x - *y)) <= 1e-9;
}

}  // namespace smartswitch
