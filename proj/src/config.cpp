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

#include "smartswitch/config.hpp"

#include <array>
#include <utility>

#include "smartswitch/errors.hpp"
#include "smartswitch/prompts.hpp"

namespace smartswitch {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 5> kModes{{
    {Mode::Vanilla, "vanilla"},
    {Mode::SmartSwitch, "smartswitch"},
    {Mode::AlwaysIntervene, "always-intervene"},
    {Mode::StandardPrompting, "standard-prompting"},
    {Mode::TokenPenalty, "token-penalty"},
}};

constexpr std::array<std::pair<MappingStrategy, std::string_view>, 6> kMappings{{
    {MappingStrategy::Max, "max"},
    {MappingStrategy::Min, "min"},
    {MappingStrategy::Mean, "mean"},
    {MappingStrategy::Median, "median"},
    {MappingStrategy::WeightedAverage, "weighted"},
    {MappingStrategy::Last, "last"},
}};

constexpr std::array<std::pair<SegmentationStrategy, std::string_view>, 3> kSegmentations{{
    {SegmentationStrategy::Grouped, "v2"},
    {SegmentationStrategy::Single, "v3"},
    {SegmentationStrategy::Adaptive, "v4"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum v) {
  for (const auto& [e, name] : table)
    if (e == v) return name;
  return "unknown";
}

template <typename Enum, std::size_t N>
Enum parse_from(const std::array<std::pair<Enum, std::string_view>, N>& table,
                std::string_view text, std::string_view what) {
  for (const auto& [e, name] : table)
    if (name == text) return e;
  std::string known;
  for (const auto& [e, name] : table) {
    if (!known.empty()) known += "|";
    known += name;
  }
  throw ConfigError("unknown " + std::string(what) + " \"" + std::string(text) + "\" (expected " +
                    known + ")");
}

}  // namespace

std::string_view to_string(Mode mode) { return name_of(kModes, mode); }
std::string_view to_string(MappingStrategy s) { return name_of(kMappings, s); }
std::string_view to_string(SegmentationStrategy s) { return name_of(kSegmentations, s); }
Mode parse_mode(std::string_view text) { return parse_from(kModes, text, "mode"); }
MappingStrategy parse_mapping(std::string_view text) {
  return parse_from(kMappings, text, "mapping strategy");
}
SegmentationStrategy parse_segmentation(std::string_view text) {
  return parse_from(kSegmentations, text, "segmentation strategy");
}

EngineConfig::EngineConfig() : deepen_prompt(default_deepen_prompt()) {}

void EngineConfig::validate() const {
  if (!(tau_score >= 0.0 && tau_score <= 1.0)) throw ConfigError("tau_score must lie in [0,1]");
  if (segment_token_threshold == 0) throw ConfigError("segment_token_threshold must be positive");
  if (group_size == 0) throw ConfigError("group_size must be positive");
  if (max_output_tokens == 0) throw ConfigError("max_output_tokens must be positive");
  if (samples_per_query == 0) throw ConfigError("samples_per_query must be positive");
  if (parallelism == 0) throw ConfigError("parallelism must be positive");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be non-negative");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw ConfigError("top_p must lie in (0,1]");
  if (intervenes() && deepen_prompt.empty())
    throw ConfigError("deepen_prompt must be non-empty when interventions are enabled");
  if (prompt_template.find("{{question}}") == std::string::npos)
    throw ConfigError("prompt_template must contain {{question}}");
}

json config_to_json(const EngineConfig& c) {
  return {
      {"mode", to_string(c.mode)},
      {"tau_score", c.tau_score},
      {"max_interventions", c.max_interventions},
      {"segment_token_threshold", c.segment_token_threshold},
      {"mapping_strategy", to_string(c.mapping_strategy)},
      {"segmentation", to_string(c.segmentation)},
      {"group_size", c.group_size},
      {"deepen_prompt", c.deepen_prompt},
      {"temperature", c.temperature},
      {"top_p", c.top_p},
      {"max_output_tokens", c.max_output_tokens},
      {"samples_per_query", c.samples_per_query},
      {"prompt_template", c.prompt_template},
      {"token_penalty_bias", c.token_penalty_bias},
      {"prm_retries", c.prm_retries},
      {"prm_backoff_ms", c.prm_backoff_ms},
      {"seed_base", c.seed_base},
      {"parallelism", c.parallelism},
  };
}

EngineConfig config_from_json(const json& j, EngineConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "mode") c.mode = parse_mode(value.get<std::string>());
      else if (key == "tau_score") c.tau_score = value.get<double>();
      else if (key == "max_interventions") c.max_interventions = value.get<std::size_t>();
      else if (key == "segment_token_threshold") c.segment_token_threshold = value.get<std::size_t>();
      else if (key == "mapping_strategy") c.mapping_strategy = parse_mapping(value.get<std::string>());
      else if (key == "segmentation") c.segmentation = parse_segmentation(value.get<std::string>());
      else if (key == "group_size") c.group_size = value.get<std::size_t>();
      else if (key == "deepen_prompt") c.deepen_prompt = value.get<std::string>();
      else if (key == "temperature") c.temperature = value.get<double>();
      else if (key == "top_p") c.top_p = value.get<double>();
      else if (key == "max_output_tokens") c.max_output_tokens = value.get<std::size_t>();
      else if (key == "samples_per_query") c.samples_per_query = value.get<std::size_t>();
      else if (key == "prompt_template") c.prompt_template = value.get<std::string>();
      else if (key == "token_penalty_bias") c.token_penalty_bias = value.get<double>();
      else if (key == "prm_retries") c.prm_retries = value.get<std::size_t>();
      else if (key == "prm_backoff_ms") c.prm_backoff_ms = value.get<std::size_t>();
      else if (key == "seed_base") c.seed_base = value.get<std::uint64_t>();
      else if (key == "parallelism") c.parallelism = value.get<std::size_t>();
      else throw ConfigError("unknown config key \"" + key + "\"");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

}  // namespace smartswitch
