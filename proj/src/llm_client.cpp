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

#include "smartswitch/llm_client.hpp"

#include <cctype>

#include <httplib.h>

#include "endpoint.hpp"
#include "smartswitch/errors.hpp"
#include "smartswitch/tokens.hpp"

namespace smartswitch {

using nlohmann::json;

json CompletionRequest::to_json() const {
  json j = {{"prompt", prompt},
            {"temperature", temperature},
            {"top_p", top_p},
            {"max_tokens", max_tokens},
            {"stream", true}};
  if (!logit_bias.empty()) j["logit_bias"] = logit_bias;
  if (!stop.empty()) j["stop"] = stop;
  if (seed) j["seed"] = *seed;
  return j;
}

CompletionRequest CompletionRequest::from_json(const json& j) {
  try {
    CompletionRequest r;
    r.prompt = j.at("prompt").get<std::string>();
    r.temperature = j.value("temperature", r.temperature);
    r.top_p = j.value("top_p", r.top_p);
    r.max_tokens = j.value("max_tokens", r.max_tokens);
    if (j.contains("logit_bias") && !j["logit_bias"].is_null())
      r.logit_bias = j["logit_bias"].get<std::map<std::string, double>>();
    if (j.contains("stop") && !j["stop"].is_null())
      r.stop = j["stop"].get<std::vector<std::string>>();
    if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed completion request: ") + e.what());
  }
}

json StreamChunk::to_json() const {
  json j = {{"text", text}, {"finished", finished}};
  if (token_count) j["token_count"] = *token_count;
  if (finish_reason) j["finish_reason"] = *finish_reason;
  return j;
}

StreamChunk StreamChunk::from_json(const json& j) {
  try {
    StreamChunk c;
    c.text = j.value("text", std::string{});
    c.finished = j.value("finished", false);
    if (j.contains("token_count") && !j["token_count"].is_null())
      c.token_count = j["token_count"].get<std::size_t>();
    if (j.contains("finish_reason") && !j["finish_reason"].is_null())
      c.finish_reason = j["finish_reason"].get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed stream chunk: ") + e.what());
  }
}

HttpLlmClient::HttpLlmClient(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  detail::parse_endpoint(endpoint_, "/generate");
}

void HttpLlmClient::stream(const CompletionRequest& request, const ChunkSink& sink) {
  const auto ep = detail::parse_endpoint(endpoint_, "/generate");
  httplib::Client cli(ep.base);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  cli.set_write_timeout(timeout_);

  std::string buffer;
  bool cancelled = false;
  bool finished = false;
  int status = 0;

  // Returns false once the sink cancels or the stream finished.
  auto handle_line = [&](std::string_view line) -> bool {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.starts_with("data:")) {
      line.remove_prefix(5);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    }
    if (line.empty()) return true;
    if (line == "[DONE]") {
      finished = true;
      sink(StreamChunk{"", std::size_t{0}, true, "stop"});
      return false;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ProtocolError(std::string("stream chunk is not JSON: ") + e.what());
    }
    auto chunk = StreamChunk::from_json(j);
    if (!sink(chunk)) {
      cancelled = true;
      return false;
    }
    if (chunk.finished) {
      finished = true;
      return false;
    }
    return true;
  };

  httplib::Request req;
  req.method = "POST";
  req.path = ep.path;
  req.body = request.to_json().dump();
  req.set_header("Content-Type", "application/json");
  req.set_header("Accept", "application/x-ndjson");
  req.response_handler = [&](const httplib::Response& res) {
    status = res.status;
    return res.status == 200;
  };
  req.content_receiver = [&](const char* data, std::size_t len, std::uint64_t, std::uint64_t) {
    buffer.append(data, len);
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!handle_line(line)) return false;
    }
    return true;
  };

  httplib::Response res;
  httplib::Error err = httplib::Error::Success;
  const bool ok = cli.send(req, res, err);
  if (cancelled || finished) return;
  if (status != 0 && status != 200)
    throw BackendError("LLM backend returned HTTP " + std::to_string(status));
  if (!ok) throw BackendError("LLM transport failure: " + httplib::to_string(err));
  if (!buffer.empty()) handle_line(buffer);
  if (!finished && !cancelled) throw BackendError("LLM stream ended without a finished chunk");
}

ScriptedLlm::ScriptedLlm(std::vector<Rule> rules, Chunking chunking, std::size_t chunk_bytes)
    : rules_(std::move(rules)), chunking_(chunking), chunk_bytes_(chunk_bytes == 0 ? 1 : chunk_bytes) {}

ScriptedLlm ScriptedLlm::from_json(const json& script) {
  try {
    const json& rules = script.is_array() ? script : script.at("rules");
    std::vector<Rule> out;
    for (const auto& r : rules) {
      Rule rule;
      rule.prefix_suffix_match = r.value("prefix_suffix_match", std::string{});
      rule.emit = r.at("emit").get<std::string>();
      if (r.contains("fail_after")) rule.fail_after = r.at("fail_after").get<std::size_t>();
      out.push_back(std::move(rule));
    }
    Chunking chunking = Chunking::Word;
    std::size_t bytes = 8;
    if (script.is_object()) {
      const auto mode = script.value("chunking", std::string("word"));
      if (mode == "bytes") chunking = Chunking::Bytes;
      else if (mode != "word") throw ParseError("unknown chunking \"" + mode + "\"");
      bytes = script.value("chunk_bytes", bytes);
    }
    return ScriptedLlm(std::move(out), chunking, bytes);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed LLM script: ") + e.what());
  }
}

const ScriptedLlm::Rule& ScriptedLlm::select(const std::string& prompt) const {
  for (const auto& rule : rules_)
    if (prompt.ends_with(rule.prefix_suffix_match)) return rule;
  throw BackendError("scripted backend has no rule for the prompt suffix");
}

std::vector<StreamChunk> ScriptedLlm::plan(const CompletionRequest& request) const {
  const auto& text = select(request.prompt).emit;
  std::vector<StreamChunk> chunks;
  std::size_t budget_left = request.max_tokens;
  bool truncated = false;

  if (chunking_ == Chunking::Word) {
    std::size_t i = 0;
    while (i < text.size()) {
      if (budget_left == 0) {
        truncated = true;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      chunks.push_back({text.substr(i, j - i), 1, false, std::nullopt});
      --budget_left;
      i = j;
    }
  } else {
    const std::size_t byte_cap =
        approx_token_count(text) <= request.max_tokens ? text.size() : request.max_tokens * 4;
    truncated = byte_cap < text.size();
    for (std::size_t i = 0; i < byte_cap; i += chunk_bytes_)
      chunks.push_back({text.substr(i, std::min(chunk_bytes_, byte_cap - i)), std::nullopt, false,
                        std::nullopt});
  }
  if (chunks.empty()) chunks.push_back({"", std::size_t{0}, false, std::nullopt});
  chunks.back().finished = true;
  chunks.back().finish_reason = truncated ? "length" : "stop";
  return chunks;
}

void ScriptedLlm::stream(const CompletionRequest& request, const ChunkSink& sink) {
  const auto& rule = select(request.prompt);
  const auto chunks = plan(request);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (rule.fail_after && i >= *rule.fail_after)
      throw BackendError("scripted backend failure after " + std::to_string(i) + " chunks");
    if (!sink(chunks[i])) return;
  }
}

}  // namespace smartswitch
