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

#include "smartswitch/prm_client.hpp"

#include <cmath>

#include <httplib.h>

#include "endpoint.hpp"
#include "smartswitch/errors.hpp"
#include "smartswitch/prompts.hpp"

namespace smartswitch {

using nlohmann::json;

json PrmRequest::to_json() const {
  std::vector<std::string> all = prior_steps;
  all.insert(all.end(), steps.begin(), steps.end());
  return {{"question", question},
          {"prior_steps", prior_steps},
          {"steps", steps},
          {"prompt", render_universal_prm_prompt(question, all)}};
}

PrmRequest PrmRequest::from_json(const json& j) {
  try {
    PrmRequest r;
    r.question = j.at("question").get<std::string>();
    r.prior_steps = j.value("prior_steps", std::vector<std::string>{});
    r.steps = j.at("steps").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed PRM request: ") + e.what());
  }
}

std::vector<double> parse_prm_response(const json& body, std::size_t expected) {
  if (!body.is_object() || !body.contains("scores") || !body["scores"].is_array())
    throw ProtocolError("PRM response lacks a \"scores\" array");
  std::vector<double> scores;
  for (const auto& s : body["scores"]) {
    if (!s.is_number()) throw ProtocolError("PRM score is not a number");
    double v = s.get<double>();
    if (!std::isfinite(v)) throw ProtocolError("PRM score is not finite");
    scores.push_back(v);
  }
  if (scores.size() != expected)
    throw ProtocolError("PRM returned " + std::to_string(scores.size()) + " scores for " +
                        std::to_string(expected) + " steps");
  return scores;
}

HttpPrmClient::HttpPrmClient(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  detail::parse_endpoint(endpoint_, "/score");
}

std::vector<double> HttpPrmClient::score(const PrmRequest& request) {
  const auto ep = detail::parse_endpoint(endpoint_, "/score");
  httplib::Client cli(ep.base);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  cli.set_write_timeout(timeout_);
  auto res = cli.Post(ep.path, request.to_json().dump(), "application/json");
  if (!res) throw ScoringError("PRM transport failure: " + httplib::to_string(res.error()));
  if (res->status >= 500) throw ScoringError("PRM server error " + std::to_string(res->status));
  if (res->status != 200) throw ProtocolError("PRM returned HTTP " + std::to_string(res->status));
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("PRM response is not JSON: ") + e.what());
  }
  return parse_prm_response(body, request.steps.size());
}

ScriptedPrm::ScriptedPrm(std::vector<Rule> rules, double default_score)
    : rules_(std::move(rules)), default_score_(default_score) {}

ScriptedPrm::ScriptedPrm(const ScriptedPrm& other)
    : rules_(other.rules_),
      default_score_(other.default_score_),
      always_fail_(other.always_fail_),
      fail_first_(other.fail_first_) {}

ScriptedPrm ScriptedPrm::failing() {
  ScriptedPrm p;
  p.always_fail_ = true;
  return p;
}

ScriptedPrm ScriptedPrm::from_json(const json& script) {
  ScriptedPrm p;
  try {
    p.default_score_ = script.value("default", 0.5);
    p.always_fail_ = script.value("fail", false);
    p.fail_first_ = script.value("fail_first", std::size_t{0});
    if (script.contains("rules"))
      for (const auto& r : script.at("rules"))
        p.rules_.push_back({r.at("contains").get<std::string>(), r.at("score").get<double>()});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed PRM script: ") + e.what());
  }
  return p;
}

std::vector<double> ScriptedPrm::score(const PrmRequest& request) {
  const auto call = calls_.fetch_add(1);
  if (always_fail_ || call < fail_first_) throw ScoringError("scripted PRM outage");
  std::vector<double> out;
  out.reserve(request.steps.size());
  for (const auto& step : request.steps) {
    double s = default_score_;
    for (const auto& rule : rules_) {
      if (step.find(rule.contains) != std::string::npos) {
        s = rule.score;
        break;
      }
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace smartswitch
