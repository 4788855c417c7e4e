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

// Shipped prompt assets. All texts are byte-exact; none carries a trailing
// newline.

#include <span>
#include <string>
#include <string_view>

namespace smartswitch {

/// Injected after backtracking to push the model deeper into the retained
/// thought.
std::string_view default_deepen_prompt();

/// Scoring template for Universal-PRM style servers. Placeholders:
/// `{{question}}` and the `<thought_k>` lines.
std::string_view universal_prm_template();

/// Scoring template for Qwen-PRM style servers (ablation).
std::string_view qwen_prm_template();

/// LLM-based process division prompt. Shipped as a documentation asset; the
/// model-division segmenter itself is not implemented.
std::string_view process_division_prompt();

/// Persistence prompt used for the token-penalty baseline. Placeholder:
/// `{{problem}}`.
std::string_view tip_prompt_template();

/// System instruction prepended in standard-prompting mode.
std::string_view standard_prompting_instruction();

std::string render_universal_prm_prompt(std::string_view question,
                                        std::span<const std::string> steps,
                                        std::string_view special_token = "<Special-Token>");
std::string render_qwen_prm_prompt(std::string_view question, std::span<const std::string> steps,
                                   std::string_view special_token = "<Special-Token>");
std::string render_tip_prompt(std::string_view problem);

/// Substitutes `{{question}}` in a user-supplied problem wrapper.
std::string render_prompt_template(std::string_view tmpl, std::string_view question);

}  // namespace smartswitch
