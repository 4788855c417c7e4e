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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smartswitch/scanner.hpp"

namespace smartswitch {

enum class SessionStatus { Running, Finished, Truncated, Failed };
enum class EventKind { CueDetected, Scored, Intervened, Skipped, Resumed, Completed };

std::string_view to_string(SessionStatus status);
std::string_view to_string(EventKind kind);

/// Append-only session log entry. Offsets index into `produced` as it was
/// when the event was recorded.
///
///   CueDetected  [start,end) = cue span, text = phrase
///   Scored       [start,end) = scored thought span, score = mapped score
///   Intervened   start = cut offset, end = old produced size, text = discarded
///   Skipped      [start,end) = cue span, detail = reason
///   Resumed      [start,end) = injected span, text = injected text
///   Completed    detail = final status
struct Event {
  EventKind kind = EventKind::CueDetected;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
  std::optional<double> score;
  std::vector<double> process_scores;
  std::string detail;

  bool operator==(const Event&) const = default;
};

inline Event make_event(EventKind kind, std::size_t start, std::size_t end) {
  Event e;
  e.kind = kind;
  e.start = start;
  e.end = end;
  return e;
}

/// Single-line rendering used by the CLI and the golden event logs.
std::string format_event(const Event& event);
nlohmann::json event_to_json(const Event& event);

/// Live state of one monitored generation. The backend context is always
/// prompt_prefix + produced.
class GenerationSession {
 public:
  GenerationSession(std::string question, std::string prompt_prefix,
                    std::size_t max_interventions);

  const std::string& question() const noexcept { return question_; }
  const std::string& prompt_prefix() const noexcept { return prefix_; }
  const std::string& produced() const noexcept { return produced_; }
  std::string context() const { return prefix_ + produced_; }
  std::size_t interventions_used() const noexcept { return interventions_used_; }
  std::size_t max_interventions() const noexcept { return max_interventions_; }
  SessionStatus status() const noexcept { return status_; }
  const std::vector<Event>& events() const noexcept { return events_; }

  void append_generated(std::string_view text);
  void log(Event event);
  void finish(SessionStatus status, std::string detail = {});

  /// Cuts produced (and so the context) back to just before the cue and logs
  /// the discarded span as Intervened. Counts against the budget. Throws
  /// InvariantError and marks the session Failed when the match is out of
  /// range, the session is not Running, or the budget is spent.
  void backtrack(const CueMatch& match);

  /// Appends `prompt` right after a backtrack, preceded by one space unless
  /// the context already ends in whitespace, and logs the injected span as
  /// Resumed. Throws InvariantError when not directly after a backtrack.
  void inject_deepen(std::string_view prompt);

 private:
  void fail(const std::string& why);

  std::string question_;
  std::string prefix_;
  std::string produced_;
  std::size_t interventions_used_ = 0;
  std::size_t max_interventions_;
  SessionStatus status_ = SessionStatus::Running;
  std::vector<Event> events_;
};

}  // namespace smartswitch
