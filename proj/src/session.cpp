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

#include "smartswitch/session.hpp"

#include <cctype>
#include <cstdio>

#include "smartswitch/errors.hpp"

namespace smartswitch {

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Running: return "running";
    case SessionStatus::Finished: return "finished";
    case SessionStatus::Truncated: return "truncated";
    case SessionStatus::Failed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::CueDetected: return "CueDetected";
    case EventKind::Scored: return "Scored";
    case EventKind::Intervened: return "Intervened";
    case EventKind::Skipped: return "Skipped";
    case EventKind::Resumed: return "Resumed";
    case EventKind::Completed: return "Completed";
  }
  return "Unknown";
}

std::string format_event(const Event& e) {
  std::string out(to_string(e.kind));
  out += " [" + std::to_string(e.start) + "," + std::to_string(e.end) + ")";
  if (e.score) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " score=%.4f", *e.score);
    out += buf;
  }
  if (!e.text.empty()) out += " text=" + nlohmann::json(e.text).dump();
  if (!e.detail.empty()) out += " detail=" + e.detail;
  return out;
}

nlohmann::json event_to_json(const Event& e) {
  nlohmann::json j = {{"kind", to_string(e.kind)}, {"start", e.start}, {"end", e.end}};
  if (!e.text.empty()) j["text"] = e.text;
  if (e.score) j["score"] = *e.score;
  if (!e.process_scores.empty()) j["process_scores"] = e.process_scores;
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

GenerationSession::GenerationSession(std::string question, std::string prompt_prefix,
                                     std::size_t max_interventions)
    : question_(std::move(question)),
      prefix_(std::move(prompt_prefix)),
      max_interventions_(max_interventions) {}

void GenerationSession::append_generated(std::string_view text) { produced_.append(text); }

void GenerationSession::log(Event event) { events_.push_back(std::move(event)); }

void GenerationSession::finish(SessionStatus status, std::string detail) {
  status_ = status;
  Event e = make_event(EventKind::Completed, produced_.size(), produced_.size());
  e.detail = std::string(to_string(status));
  if (!detail.empty()) e.detail += ": " + detail;
  events_.push_back(std::move(e));
}

void GenerationSession::fail(const std::string& why) {
  if (status_ == SessionStatus::Running) finish(SessionStatus::Failed, why);
  throw InvariantError(why);
}

void GenerationSession::backtrack(const CueMatch& match) {
  if (status_ != SessionStatus::Running) fail("backtrack on a session that is not running");
  if (match.match_start > match.match_end || match.match_end > produced_.size())
    fail("backtrack offset outside produced text");
  if (interventions_used_ >= max_interventions_) fail("intervention budget exhausted");

  Event e = make_event(EventKind::Intervened, match.match_start, produced_.size());
  e.text = produced_.substr(match.match_start);
  produced_.resize(match.match_start);
  ++interventions_used_;
  events_.push_back(std::move(e));
}

void GenerationSession::inject_deepen(std::string_view prompt) {
  if (status_ != SessionStatus::Running) fail("inject on a session that is not running");
  if (events_.empty() || events_.back().kind != EventKind::Intervened)
    fail("deepen prompt injected without a preceding backtrack");

  const std::string_view ctx_tail = produced_.empty() ? prefix_ : produced_;
  const bool needs_space =
      !ctx_tail.empty() && !std::isspace(static_cast<unsigned char>(ctx_tail.back()));
  std::string injected = needs_space ? " " : "";
  injected.append(prompt);

  Event e = make_event(EventKind::Resumed, produced_.size(), produced_.size() + injected.size());
  e.text = injected;
  produced_ += injected;
  events_.push_back(std::move(e));
}

}  // namespace smartswitch
