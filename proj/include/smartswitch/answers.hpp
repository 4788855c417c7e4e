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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace smartswitch {

/// Contents of the last brace-balanced \boxed{...} group, if any.
std::optional<std::string> extract_answer(std::string_view final_text);

/// Strips whitespace, math delimiters, spacing/sizing commands, \text{}
/// wrappers, degree/percent marks and redundant outer braces.
std::string normalize_answer(std::string_view answer);

/// Exact value of an integer, decimal, a/b or \frac{a}{b} answer.
std::optional<long double> parse_numeric_answer(std::string_view normalized);

/// Lightweight equivalence: normalized string equality, or numeric equality
/// within 1e-9. Not a symbolic checker: "x+1" and "1+x" differ.
bool answers_equivalent(std::string_view candidate, std::string_view truth);

using AnswerChecker = std::function<bool(std::string_view candidate, std::string_view truth)>;

}  // namespace smartswitch
