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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smartswitch/cues.hpp"
#include "smartswitch/records.hpp"
#include "smartswitch/tokens.hpp"
#include "smartswitch/trace.hpp"

namespace smartswitch {

/// Underthinking frequency at length threshold L: the number of thoughts
/// shorter than L tokens.
struct UfReport {
  std::size_t L = 0;
  std::size_t uf = 0;
  std::vector<bool> per_thought_flags;
};

UfReport underthinking_frequency(const ReasoningTrace& trace, std::size_t L);

/// Non-overlapping leftmost-longest cue occurrences, same policy as the
/// streaming scanner.
std::size_t switch_count(std::string_view full_text, const SwitchCueTable& cues);

struct LengthStats {
  double mean_all = 0.0;
  double mean_only_correct = 0.0;  // 0 when nothing is correct
  std::size_t n_all = 0;
  std::size_t n_correct = 0;
};

/// Response-length means over every sample and over correct samples only.
/// Throws std::invalid_argument when there are no samples.
LengthStats length_stats(std::span<const BenchmarkRecord> records);
nlohmann::json length_stats_to_json(const LengthStats& stats);

/// Splits generated text into thoughts at cue occurrences. Text after a
/// "</think>" marker is the solution and is not segmented. Cue text, and the
/// whitespace right after it, belongs to no thought; empty spans are dropped.
ReasoningTrace segment_trace_for_metrics(std::string_view full_text, const SwitchCueTable& cues,
                                         const TokenCounter& counter = default_token_counter(),
                                         std::string question = {});

inline const std::vector<std::size_t>& default_uf_grid() {
  static const std::vector<std::size_t> grid{50, 100, 150, 200, 300};
  return grid;
}

struct TraceRow {
  std::size_t trace_index = 0;
  std::size_t thoughts = 0;
  std::size_t switches = 0;
  std::size_t thinking_tokens = 0;
  std::vector<std::size_t> uf;  // aligned with the report grid
};

struct MetricsReport {
  std::vector<std::size_t> grid;
  std::vector<double> mean_uf;  // aligned with grid
  double switch_count_mean = 0.0;
  std::optional<LengthStats> lengths;
  std::vector<TraceRow> rows;
};

MetricsReport build_metrics_report(std::span<const ReasoningTrace> traces,
                                   std::span<const std::size_t> grid, const SwitchCueTable& cues,
                                   std::optional<LengthStats> lengths = std::nullopt);

/// {"uf_curve": [{"L", "mean_uf"}], "switch_count_mean", "length_stats": {...},
///  "segmentation": "cue-spans"}
nlohmann::json metrics_report_to_json(const MetricsReport& report);
std::string metrics_rows_csv(const MetricsReport& report);

}  // namespace smartswitch
