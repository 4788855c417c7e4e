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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smartswitch/config.hpp"
#include "smartswitch/cues.hpp"
#include "smartswitch/llm_client.hpp"
#include "smartswitch/prm_client.hpp"
#include "smartswitch/session.hpp"
#include "smartswitch/tokens.hpp"
#include "smartswitch/trace.hpp"

namespace smartswitch {

/// What the engine does with a detected switch.
struct InterventionAction {
  enum class Kind { Continue, BacktrackAndDeepen };
  Kind kind = Kind::Continue;
  std::optional<std::size_t> cut_offset;
  std::optional<std::string> injected_text;
};

struct GenerationResult {
  std::string prompt;      // initial context sent to the backend
  std::string final_text;  // generation only, injected prompts included
  ReasoningTrace trace;
  std::size_t interventions_used = 0;
  std::size_t tokens_generated = 0;  // every emitted token, discarded ones too
  std::size_t emitted_bytes = 0;
  double wall_time = 0.0;  // seconds
  SessionStatus status = SessionStatus::Running;
  std::vector<Event> events;
  std::optional<std::string> error;
};

struct GenerationOptions {
  std::optional<std::uint64_t> seed;
  /// Used for segmentation and for chunks that carry no token_count.
  TokenCounter token_counter = default_token_counter();
  /// Called for every event as it is logged.
  std::function<void(const Event&)> on_event;
};

/// The context the first request continues, per mode.
std::string build_initial_prompt(std::string_view question, const EngineConfig& config);

/// Negative bias keyed on the first word of every cue phrase, trailing
/// punctuation stripped. Stands in for a decode-time switch penalty since
/// the backend tokenizer is unknown here.
std::map<std::string, double> cue_penalty_bias(const SwitchCueTable& cues, double bias);

/// Runs one monitored generation to completion.
///
/// In SmartSwitch mode every detected cue, while budget remains, scores the
/// current thought (from the last accepted switch point, or the start, up to
/// the cue) and, when promising, cuts the generation back to just before the
/// cue, appends the deepen prompt and issues a fresh request. AlwaysIntervene
/// does the same without scoring. The other modes never scan.
///
/// Backend failures end the session as Failed with the partial trace; PRM
/// failures are logged as Skipped and generation continues.
GenerationResult run_generation(std::string_view question, const EngineConfig& config,
                                LlmClient& llm, PrmClient& prm, const SwitchCueTable& cues,
                                const GenerationOptions& options = {});

nlohmann::json generation_result_to_json(const GenerationResult& result);

}  // namespace smartswitch
