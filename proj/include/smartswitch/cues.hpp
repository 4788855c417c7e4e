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
#include <string>
#include <string_view>
#include <vector>

namespace smartswitch {

enum class CueCategory { SimpleAlternative, MethodShift };

std::string_view to_string(CueCategory category);

/// A literal phrase whose appearance marks a thought switch. Matching is
/// case-sensitive and exact.
struct SwitchCue {
  std::string phrase;
  CueCategory category = CueCategory::SimpleAlternative;

  bool operator==(const SwitchCue&) const = default;
};

/// Ordered, duplicate-free set of cues. Immutable after construction.
class SwitchCueTable {
 public:
  /// Throws ConfigError on an empty phrase or a duplicate phrase.
  explicit SwitchCueTable(std::vector<SwitchCue> cues);

  const std::vector<SwitchCue>& cues() const noexcept { return cues_; }
  std::size_t size() const noexcept { return cues_.size(); }
  bool empty() const noexcept { return cues_.empty(); }
  std::size_t longest_phrase_length() const noexcept { return longest_; }

  const SwitchCue* find(std::string_view phrase) const noexcept;

  auto begin() const noexcept { return cues_.begin(); }
  auto end() const noexcept { return cues_.end(); }

 private:
  std::vector<SwitchCue> cues_;
  std::size_t longest_ = 0;
};

/// The eleven shipped cues, Simple Alternatives first, in table order.
const SwitchCueTable& default_cue_table();

}  // namespace smartswitch
