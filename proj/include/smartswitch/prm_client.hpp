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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smartswitch {

/// Wire request: {"question", "prior_steps", "steps"}; the response carries
/// one score per entry of `steps`.
struct PrmRequest {
  std::string question;
  std::vector<std::string> prior_steps;
  std::vector<std::string> steps;

  /// Includes an additional "prompt" key holding the rendered Universal-PRM
  /// text, for servers that score raw prompts.
  nlohmann::json to_json() const;
  static PrmRequest from_json(const nlohmann::json& j);
};

/// Thread-safe process scorer. Implementations throw ScoringError on
/// transport failure and ProtocolError on a malformed response. Raw scores
/// are returned unclamped.
class PrmClient {
 public:
  virtual ~PrmClient() = default;
  virtual std::vector<double> score(const PrmRequest& request) = 0;
};

/// Parses {"scores": [...]} and checks the count against `expected`.
std::vector<double> parse_prm_response(const nlohmann::json& body, std::size_t expected);

class HttpPrmClient final : public PrmClient {
 public:
  /// `endpoint` is a URL such as "http://127.0.0.1:8081/score".
  explicit HttpPrmClient(std::string endpoint,
                         std::chrono::milliseconds timeout = std::chrono::seconds(120));
  std::vector<double> score(const PrmRequest& request) override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

/// Deterministic scorer. Each step is scored by the first rule whose
/// `contains` text occurs in it, else `default_score`.
///
/// Script JSON: {"default": 0.5, "rules": [{"contains": "...", "score": 0.9}],
///               "fail": false, "fail_first": 0}
class ScriptedPrm final : public PrmClient {
 public:
  struct Rule {
    std::string contains;
    double score = 0.0;
  };

  ScriptedPrm() = default;
  ScriptedPrm(std::vector<Rule> rules, double default_score);
  static ScriptedPrm from_json(const nlohmann::json& script);
  static ScriptedPrm constant(double score) { return ScriptedPrm({}, score); }
  static ScriptedPrm failing();

  ScriptedPrm(const ScriptedPrm& other);

  std::vector<double> score(const PrmRequest& request) override;

  /// Number of score() calls made, including failed ones.
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  std::vector<Rule> rules_;
  double default_score_ = 0.5;
  bool always_fail_ = false;
  std::size_t fail_first_ = 0;
  std::atomic<std::size_t> calls_{0};
};

/// Adapts a callable; used by tests and the Python bindings.
class FunctionPrm final : public PrmClient {
 public:
  using Fn = std::function<std::vector<double>(const PrmRequest&)>;
  explicit FunctionPrm(Fn fn) : fn_(std::move(fn)) {}
  std::vector<double> score(const PrmRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

}  // namespace smartswitch
