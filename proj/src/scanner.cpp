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

#include "smartswitch/scanner.hpp"

namespace smartswitch {

CueTrie::CueTrie(const SwitchCueTable& table) : table_(table) {
  nodes_.emplace_back();
  for (std::size_t i = 0; i < table_.size(); ++i) {
    std::int32_t v = 0;
    for (char ch : table_.cues()[i].phrase) {
      auto c = static_cast<unsigned char>(ch);
      if (nodes_[v].next[c] == -1) {
        nodes_[v].next[c] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      v = nodes_[v].next[c];
    }
    nodes_[v].cue = static_cast<std::int32_t>(i);
  }
}

CueTrie::Probe CueTrie::probe(std::string_view text, std::size_t pos) const noexcept {
  Probe out;
  std::int32_t v = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    v = nodes_[v].next[static_cast<unsigned char>(text[i])];
    if (v == -1) return out;
    if (nodes_[v].cue >= 0) out.longest_cue = nodes_[v].cue;
  }
  // Text exhausted mid-walk: a longer cue is possible iff this node has
  // children. The root counts only when pos == text.size().
  if (pos < text.size()) {
    for (auto n : nodes_[v].next)
      if (n != -1) {
        out.can_extend = true;
        break;
      }
  }
  return out;
}

StreamScanner::StreamScanner(const SwitchCueTable& table, std::size_t absolute_offset)
    : StreamScanner(std::make_shared<const CueTrie>(table), absolute_offset) {}

StreamScanner::StreamScanner(std::shared_ptr<const CueTrie> trie, std::size_t absolute_offset)
    : trie_(std::move(trie)), consumed_(absolute_offset) {}

std::vector<CueMatch> StreamScanner::feed(std::string_view chunk) {
  pending_.append(chunk);
  consumed_ += chunk.size();
  return drain(false);
}

std::vector<CueMatch> StreamScanner::finish() { return drain(true); }

void StreamScanner::reset(std::size_t absolute_offset) {
  pending_.clear();
  consumed_ = absolute_offset;
}

std::vector<CueMatch> StreamScanner::drain(bool at_end) {
  std::vector<CueMatch> matches;
  const std::size_t base = consumed_ - pending_.size();
  std::size_t pos = 0;
  while (pos < pending_.size()) {
    auto probe = trie_->probe(pending_, pos);
    if (probe.can_extend && !at_end) break;
    if (probe.longest_cue >= 0) {
      const auto& cue = trie_->table().cues()[static_cast<std::size_t>(probe.longest_cue)];
      matches.push_back({cue, base + pos, base + pos + cue.phrase.size()});
      pos += cue.phrase.size();
    } else {
      ++pos;
    }
  }
  pending_.erase(0, pos);
  return matches;
}

std::vector<CueMatch> scan_text(std::string_view text, const SwitchCueTable& table) {
  StreamScanner scanner(table);
  auto matches = scanner.feed(text);
  auto rest = scanner.finish();
  matches.insert(matches.end(), rest.begin(), rest.end());
  return matches;
}

}  // namespace smartswitch
