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

#include <cstddef>
#include <functional>
#include <string_view>

namespace smartswitch {

/// Counts tokens in a span of text. Swap in a real tokenizer when one is
/// available; the default is a character heuristic.
using TokenCounter = std::function<std::size_t(std::string_view)>;

/// ceil(bytes / 4). Offsets and lengths throughout the library are byte
/// counts of UTF-8 text.
constexpr std::size_t approx_token_count(std::string_view text) noexcept {
  return (text.size() + 3) / 4;
}

inline TokenCounter default_token_counter() { return [](std::string_view t) { return approx_token_count(t); }; }

}  // namespace smartswitch
