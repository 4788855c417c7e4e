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
#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace smartswitch {

enum class Mode { Vanilla, SmartSwitch, AlwaysIntervene, StandardPrompting, TokenPenalty };

/// How per-process PRM scores collapse into one thought score.
enum class MappingStrategy { Max, Min, Mean, Median, WeightedAverage, Last };

/// Process division used before PRM scoring. Adaptive is the default; the
/// other two exist for ablation runs.
enum class SegmentationStrategy { Grouped, Single, Adaptive };

// CLI spellings: "vanilla", "smartswitch", "always-intervene", ...
std::string_view to_string(Mode mode);
std::string_view to_string(MappingStrategy strategy);
std::string_view to_string(SegmentationStrategy strategy);
Mode parse_mode(std::string_view text);
MappingStrategy parse_mapping(std::string_view text);
SegmentationStrategy parse_segmentation(std::string_view text);

struct EngineConfig {
  Mode mode = Mode::SmartSwitch;
  double tau_score = 0.7;
  std::size_t max_interventions = 3;
  std::size_t segment_token_threshold = 200;
  MappingStrategy mapping_strategy = MappingStrategy::Last;
  SegmentationStrategy segmentation = SegmentationStrategy::Adaptive;
  std::size_t group_size = 5;
  std::string deepen_prompt;  // defaults to default_deepen_prompt()
  double temperature = 0.6;
  double top_p = 0.95;
  std::size_t max_output_tokens = 32768;
  std::size_t samples_per_query = 32;

  /// Problem wrapper; `{{question}}` is replaced by the problem text.
  std::string prompt_template = "{{question}}";
  /// Logit bias applied to cue-initial words in TokenPenalty mode.
  double token_penalty_bias = -5.0;

  std::size_t prm_retries = 2;
  std::size_t prm_backoff_ms = 50;
  std::uint64_t seed_base = 0;
  std::size_t parallelism = 1;

  EngineConfig();

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  bool intervenes() const noexcept {
    return mode == Mode::SmartSwitch || mode == Mode::AlwaysIntervene;
  }
};

nlohmann::json config_to_json(const EngineConfig& config);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
EngineConfig config_from_json(const nlohmann::json& j, EngineConfig base = {});

}  // namespace smartswitch
