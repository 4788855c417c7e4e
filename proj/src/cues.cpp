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

#include "smartswitch/cues.hpp"

#include <algorithm>
#include <unordered_set>

#include "smartswitch/errors.hpp"

namespace smartswitch {

std::string_view to_string(CueCategory category) {
  switch (category) {
    case CueCategory::SimpleAlternative:
      return "simple_alternative";
    case CueCategory::MethodShift:
      return "method_shift";
  }
  return "unknown";
}

SwitchCueTable::SwitchCueTable(std::vector<SwitchCue> cues) : cues_(std::move(cues)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& cue : cues_) {
    if (cue.phrase.empty()) throw ConfigError("switch cue phrase must be non-empty");
    if (!seen.insert(cue.phrase).second)
      throw ConfigError("duplicate switch cue phrase: \"" + cue.phrase + "\"");
    longest_ = std::max(longest_, cue.phrase.size());
  }
}

const SwitchCue* SwitchCueTable::find(std::string_view phrase) const noexcept {
  auto it = std::find_if(cues_.begin(), cues_.end(),
                         [&](const SwitchCue& c) { return c.phrase == phrase; });
  return it == cues_.end() ? nullptr : &*it;
}

const SwitchCueTable& default_cue_table() {
  static const SwitchCueTable table{{
      {"Alternately,", CueCategory::SimpleAlternative},
      {"Alternatively,", CueCategory::SimpleAlternative},
      {"Alternative:", CueCategory::SimpleAlternative},
      {"Alternative approach:", CueCategory::SimpleAlternative},
      {"Wait, alternatively,", CueCategory::SimpleAlternative},
      {"Let me try another method", CueCategory::MethodShift},
      {"Let me try another approach", CueCategory::MethodShift},
      {"Wait, another approach:", CueCategory::MethodShift},
      {"Wait, alternate approach:", CueCategory::MethodShift},
      {"Wait, let me try another method", CueCategory::MethodShift},
      {"Wait, let me try another approach", CueCategory::MethodShift},
  }};
  return table;
}

}  // namespace smartswitch
