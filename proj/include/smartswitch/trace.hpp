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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smartswitch {

/// One reasoning unit of a trace. `text` is always full_text[start, end).
struct Thought {
  std::size_t index = 1;  // 1-based
  std::string text;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;
  std::size_t token_len = 0;
  std::vector<double> process_scores;
  std::optional<double> potential_score;

  bool operator==(const Thought&) const = default;
};

/// A question with its generated text segmented into thoughts. Thoughts are
/// contiguous in offset order; the gaps between them hold cue text.
struct ReasoningTrace {
  std::string question;
  std::vector<Thought> thoughts;
  std::string solution;
  std::string full_text;

  bool operator==(const ReasoningTrace&) const = default;
};

/// Throws InvariantError when a thought violates its offset/text/score
/// invariants or thoughts overlap.
void validate_trace(const ReasoningTrace& trace);

/// Trace record (one JSON object per line). Thought text is not stored; it is
/// recovered from full_text on parse.
nlohmann::json trace_to_json(const ReasoningTrace& trace);
ReasoningTrace trace_from_json(const nlohmann::json& record);

std::string trace_to_line(const ReasoningTrace& trace);
ReasoningTrace trace_from_line(const std::string& line, std::size_t line_no = 0);

}  // namespace smartswitch
