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

// Division of a thought into processes, the unit scored by the PRM.
//
// A paragraph break is any run of two or more '\n'. Paragraphs are the
// maximal non-empty spans between breaks. A process spans one or more
// consecutive paragraphs and keeps the breaks between them, so the text
// between two consecutive processes is always a break.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "smartswitch/config.hpp"
#include "smartswitch/tokens.hpp"

namespace smartswitch {

struct Process {
  std::string text;
  std::size_t token_len = 0;
  std::size_t ordinal = 0;  // 0-based within the thought
  std::size_t offset = 0;   // byte offset of text within the source thought

  bool operator==(const Process&) const = default;
};

struct Paragraph {
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<Paragraph> split_paragraphs(std::string_view text);

/// v4: whole thought when it fits in `token_threshold`, otherwise paragraphs
/// merged greedily left to right while the running total stays within the
/// threshold. A lone paragraph over the threshold stays a single process.
/// Throws std::invalid_argument on empty text or a zero threshold.
std::vector<Process> segment_adaptive_v4(std::string_view thought_text,
                                         std::size_t token_threshold,
                                         const TokenCounter& counter = default_token_counter());

/// v2: paragraphs grouped into fixed chunks of `group_size`.
std::vector<Process> segment_grouped_v2(std::string_view text, std::size_t group_size = 5,
                                        const TokenCounter& counter = default_token_counter());

/// v3: one process per paragraph.
std::vector<Process> segment_single_v3(std::string_view text,
                                       const TokenCounter& counter = default_token_counter());

/// Dispatches on the configured strategy.
std::vector<Process> segment_thought(std::string_view text, const EngineConfig& config,
                                     const TokenCounter& counter = default_token_counter());

}  // namespace smartswitch
