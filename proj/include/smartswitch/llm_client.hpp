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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smartswitch {

/// Completion-style request. `prompt` is a raw continuation prefix: the
/// backend must continue it verbatim with no chat templating.
struct CompletionRequest {
  std::string prompt;
  double temperature = 0.6;
  double top_p = 0.95;
  std::size_t max_tokens = 32768;
  std::map<std::string, double> logit_bias;
  std::vector<std::string> stop;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
  static CompletionRequest from_json(const nlohmann::json& j);
  bool operator==(const CompletionRequest&) const = default;
};

/// One increment of the response stream: {"text", "token_count"?, "finished"}.
/// `finish_reason` is "stop" or "length" when present.
struct StreamChunk {
  std::string text;
  std::optional<std::size_t> token_count;
  bool finished = false;
  std::optional<std::string> finish_reason;

  nlohmann::json to_json() const;
  static StreamChunk from_json(const nlohmann::json& j);
};

/// Receives chunks in order. Returning false cancels the stream.
using ChunkSink = std::function<bool(const StreamChunk&)>;

/// Streaming text-continuation backend. Must tolerate concurrent streams
/// from different sessions. Throws BackendError on stream failure and
/// ProtocolError on malformed chunks.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual void stream(const CompletionRequest& request, const ChunkSink& sink) = 0;
};

/// POSTs the request JSON and reads newline-delimited chunk objects
/// ("data: " prefixes and a "[DONE]" line are tolerated).
class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(std::string endpoint,
                         std::chrono::milliseconds timeout = std::chrono::seconds(600));
  void stream(const CompletionRequest& request, const ChunkSink& sink) override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

/// Deterministic backend driven by rules. For each request the first rule
/// whose `prefix_suffix_match` is a suffix of the prompt fires and its
/// `emit` text is streamed. No matching rule is a BackendError.
///
/// Script JSON: either a bare rule array or
///   {"chunking": "word" | "bytes", "chunk_bytes": 8,
///    "rules": [{"prefix_suffix_match": "...", "emit": "...", "fail_after": N?}],
///    "prm": {...}}
///
/// "word" chunking emits one whitespace-terminated word per chunk and
/// reports token_count 1; "bytes" chunking emits fixed-size slices with no
/// token count. `fail_after` raises BackendError after N chunks.
class ScriptedLlm final : public LlmClient {
 public:
  struct Rule {
    std::string prefix_suffix_match;
    std::string emit;
    std::optional<std::size_t> fail_after;
  };
  enum class Chunking { Word, Bytes };

  ScriptedLlm(std::vector<Rule> rules, Chunking chunking = Chunking::Word,
              std::size_t chunk_bytes = 8);
  static ScriptedLlm from_json(const nlohmann::json& script);

  /// The chunks the rule matching `request` would emit, honoring max_tokens.
  std::vector<StreamChunk> plan(const CompletionRequest& request) const;

  void stream(const CompletionRequest& request, const ChunkSink& sink) override;

  const std::vector<Rule>& rules() const noexcept { return rules_; }

 private:
  const Rule& select(const std::string& prompt) const;

  std::vector<Rule> rules_;
  Chunking chunking_;
  std::size_t chunk_bytes_;
};

}  // namespace smartswitch
