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

#include "smartswitch/engine.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <memory>

#include "smartswitch/errors.hpp"
#include "smartswitch/metrics.hpp"
#include "smartswitch/prompts.hpp"
#include "smartswitch/scanner.hpp"
#include "smartswitch/scoring.hpp"
#include "smartswitch/segmentation.hpp"

namespace smartswitch {

namespace {

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

class Controller {
 public:
  Controller(std::string_view question, const EngineConfig& config, LlmClient& llm, PrmClient& prm,
             const SwitchCueTable& cues, const GenerationOptions& options)
      : config_(config),
        llm_(llm),
        prm_(prm),
        options_(options),
        session_(std::string(question), build_initial_prompt(question, config),
                 config.max_interventions),
        scanning_(config.intervenes()),
        scanner_(std::make_shared<const CueTrie>(cues)) {
    if (config.mode == Mode::TokenPenalty)
      bias_ = cue_penalty_bias(cues, config.token_penalty_bias);
  }

  GenerationResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      loop();
    } catch (const InvariantError& e) {
      error_ = e.what();
    }
    GenerationResult r;
    r.prompt = session_.prompt_prefix();
    r.final_text = session_.produced();
    r.trace = segment_trace_for_metrics(r.final_text, scanner_.cue_table(), options_.token_counter,
                                        session_.question());
    r.interventions_used = session_.interventions_used();
    r.tokens_generated = tokens();
    r.emitted_bytes = emitted_bytes_;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.status = session_.status();
    r.events = session_.events();
    r.error = error_;
    return r;
  }

 private:
  enum class StreamEnd { None, Restart, Finished, LengthStop, Budget };

  std::size_t tokens() const { return reported_tokens_ + (unreported_bytes_ + 3) / 4; }

  void log(Event e) {
    if (options_.on_event) options_.on_event(e);
    session_.log(std::move(e));
  }

  void finish(SessionStatus status, std::string detail = {}) {
    session_.finish(status, std::move(detail));
    if (options_.on_event) options_.on_event(session_.events().back());
  }

  void loop() {
    while (session_.status() == SessionStatus::Running) {
      if (tokens() >= config_.max_output_tokens) {
        finish(SessionStatus::Truncated, "max_output_tokens");
        return;
      }
      CompletionRequest req;
      req.prompt = session_.context();
      req.temperature = config_.temperature;
      req.top_p = config_.top_p;
      req.max_tokens = config_.max_output_tokens - tokens();
      req.logit_bias = bias_;
      req.seed = options_.seed;

      end_ = StreamEnd::None;
      try {
        llm_.stream(req, [this](const StreamChunk& c) { return on_chunk(c); });
      } catch (const BackendError& e) {
        error_ = e.what();
        finish(SessionStatus::Failed, e.what());
        return;
      } catch (const ProtocolError& e) {
        error_ = e.what();
        finish(SessionStatus::Failed, e.what());
        return;
      }

      switch (end_) {
        case StreamEnd::Restart:
          continue;
        case StreamEnd::Finished:
          finish(SessionStatus::Finished);
          return;
        case StreamEnd::LengthStop:
          finish(SessionStatus::Truncated, "backend length stop");
          return;
        case StreamEnd::Budget:
          finish(SessionStatus::Truncated, "max_output_tokens");
          return;
        case StreamEnd::None:
          finish(SessionStatus::Failed, "stream ended without a finished chunk");
          return;
      }
    }
  }

  bool on_chunk(const StreamChunk& chunk) {
    session_.append_generated(chunk.text);
    emitted_bytes_ += chunk.text.size();
    if (chunk.token_count) reported_tokens_ += *chunk.token_count;
    else unreported_bytes_ += chunk.text.size();

    if (scanning_) {
      auto matches = scanner_.feed(chunk.text);
      if (chunk.finished) {
        auto rest = scanner_.finish();
        matches.insert(matches.end(), rest.begin(), rest.end());
      }
      for (const auto& m : matches) {
        const auto action = on_cue(m);
        if (action.kind == InterventionAction::Kind::BacktrackAndDeepen) {
          session_.backtrack(m);
          if (options_.on_event) options_.on_event(session_.events().back());
          session_.inject_deepen(*action.injected_text);
          if (options_.on_event) options_.on_event(session_.events().back());
          scanner_.reset(session_.produced().size());
          end_ = StreamEnd::Restart;
          return false;
        }
      }
    }

    if (chunk.finished) {
      end_ = chunk.finish_reason == "length" ? StreamEnd::LengthStop : StreamEnd::Finished;
      return false;
    }
    if (tokens() >= config_.max_output_tokens) {
      end_ = StreamEnd::Budget;
      return false;
    }
    return true;
  }

  InterventionAction on_cue(const CueMatch& m) {
    const auto& produced = session_.produced();
    Event detected = make_event(EventKind::CueDetected, m.match_start, m.match_end);
    detected.text = m.cue.phrase;
    log(std::move(detected));

    auto skip = [&](std::string reason) {
      Event e = make_event(EventKind::Skipped, m.match_start, m.match_end);
      e.detail = std::move(reason);
      log(std::move(e));
      thought_start_ = m.match_end;
      return InterventionAction{};
    };

    if (session_.interventions_used() >= config_.max_interventions) return skip("budget exhausted");
    const std::string_view thought =
        std::string_view(produced).substr(thought_start_, m.match_start - thought_start_);
    if (blank(thought)) return skip("empty thought");

    bool promising = config_.mode == Mode::AlwaysIntervene;
    if (!promising) {
      try {
        const auto processes = segment_thought(thought, config_, options_.token_counter);
        const auto prior = std::string_view(produced).substr(0, thought_start_);
        const auto verdict =
            score_thought(session_.question(), prior, processes, prm_, config_.mapping_strategy,
                          {config_.prm_retries, std::chrono::milliseconds(config_.prm_backoff_ms)});
        Event scored = make_event(EventKind::Scored, thought_start_, m.match_start);
        scored.score = verdict.mapped_score;
        scored.process_scores = verdict.process_scores;
        log(std::move(scored));
        promising = is_promising(verdict.mapped_score, config_.tau_score);
      } catch (const ScoringError& e) {
        return skip(std::string("prm unavailable: ") + e.what());
      } catch (const ProtocolError& e) {
        return skip(std::string("prm protocol error: ") + e.what());
      }
    }
    if (!promising) {
      thought_start_ = m.match_end;
      return {};
    }
    // The retained thought plus its deepened continuation stays the current
    // thought, so thought_start_ is left alone.
    return {InterventionAction::Kind::BacktrackAndDeepen, m.match_start, config_.deepen_prompt};
  }

  const EngineConfig& config_;
  LlmClient& llm_;
  PrmClient& prm_;
  const GenerationOptions& options_;
  GenerationSession session_;
  bool scanning_;
  StreamScanner scanner_;
  std::map<std::string, double> bias_;
  std::size_t thought_start_ = 0;
  std::size_t reported_tokens_ = 0;
  std::size_t unreported_bytes_ = 0;
  std::size_t emitted_bytes_ = 0;
  StreamEnd end_ = StreamEnd::None;
  std::optional<std::string> error_;
};

}  // namespace

std::string build_initial_prompt(std::string_view question, const EngineConfig& config) {
  switch (config.mode) {
    case Mode::StandardPrompting:
      return std::string(standard_prompting_instruction()) + "\n\n" +
             render_prompt_template(config.prompt_template, question);
    case Mode::TokenPenalty:
      return render_tip_prompt(question);
    default:
      return render_prompt_template(config.prompt_template, question);
  }
}

std::map<std::string, double> cue_penalty_bias(const SwitchCueTable& cues, double bias) {
  std::map<std::string, double> out;
  for (const auto& cue : cues) {
    auto word = cue.phrase.substr(0, cue.phrase.find(' '));
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back()))) word.pop_back();
    if (!word.empty()) out[word] = bias;
  }
  return out;
}

GenerationResult run_generation(std::string_view question, const EngineConfig& config,
                                LlmClient& llm, PrmClient& prm, const SwitchCueTable& cues,
                                const GenerationOptions& options) {
  config.validate();
  Controller controller(question, config, llm, prm, cues, options);
  return controller.run();
}

nlohmann::json generation_result_to_json(const GenerationResult& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events) events.push_back(event_to_json(e));
  nlohmann::json j = {{"final_text", r.final_text},
                      {"status", to_string(r.status)},
                      {"interventions_used", r.interventions_used},
                      {"tokens_generated", r.tokens_generated},
                      {"wall_time", r.wall_time},
                      {"events", std::move(events)},
                      {"trace", trace_to_json(r.trace)}};
  if (r.error) j["error"] = *r.error;
  return j;
}

}  // namespace smartswitch
