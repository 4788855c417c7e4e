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

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "smartswitch/cues.hpp"

namespace smartswitch {

/// A cue occurrence. Offsets are absolute byte offsets into the text the
/// scanner has consumed; text[match_start, match_end) == cue.phrase.
struct CueMatch {
  SwitchCue cue;
  std::size_t match_start = 0;
  std::size_t match_end = 0;

  bool operator==(const CueMatch&) const = default;
};

/// Byte trie over the cue phrases, shared read-only between scanners.
class CueTrie {
 public:
  explicit CueTrie(const SwitchCueTable& table);

  struct Probe {
    int longest_cue = -1;       // index into the table, -1 if none matched
    bool can_extend = false;    // text ran out while a longer cue was still possible
  };

  /// Walks the trie from text[pos]. Reports the longest cue that matches
  /// there and whether a longer one could still match given more text.
  Probe probe(std::string_view text, std::size_t pos) const noexcept;

  const SwitchCueTable& table() const noexcept { return table_; }

 private:
  struct Node {
    std::array<std::int32_t, 256> next;
    std::int32_t cue = -1;
    Node() { next.fill(-1); }
  };
  SwitchCueTable table_;
  std::vector<Node> nodes_;
};

/// Incremental leftmost-longest cue matcher. Feeding any partition of a text
/// followed by finish() reports exactly the matches of scan_text() on the
/// whole text.
///
/// A position is decided once no cue starting there can still grow; the
/// undecided suffix (shorter than the longest cue) is held in pending_tail.
class StreamScanner {
 public:
  explicit StreamScanner(const SwitchCueTable& table, std::size_t absolute_offset = 0);
  explicit StreamScanner(std::shared_ptr<const CueTrie> trie, std::size_t absolute_offset = 0);

  std::vector<CueMatch> feed(std::string_view chunk);

  /// Resolves the pending tail as end of stream.
  std::vector<CueMatch> finish();

  /// Drops pending state and restarts at `absolute_offset`.
  void reset(std::size_t absolute_offset);

  const std::string& pending_tail() const noexcept { return pending_; }
  std::size_t absolute_offset() const noexcept { return consumed_; }
  const SwitchCueTable& cue_table() const noexcept { return trie_->table(); }

 private:
  std::vector<CueMatch> drain(bool at_end);

  std::shared_ptr<const CueTrie> trie_;
  std::string pending_;
  std::size_t consumed_ = 0;  // bytes fed so far, including pending_
};

/// Whole-text leftmost-longest, non-overlapping scan.
std::vector<CueMatch> scan_text(std::string_view text, const SwitchCueTable& table);

}  // namespace smartswitch
