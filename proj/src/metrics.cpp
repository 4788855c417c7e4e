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

#include "smartswitch/metrics.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "smartswitch/scanner.hpp"

namespace smartswitch {

UfReport underthinking_frequency(const ReasoningTrace& trace, std::size_t L) {
  UfReport r;
  r.L = L;
  r.per_thought_flags.reserve(trace.thoughts.size());
  for (const auto& t : trace.thoughts) {
    const bool short_thought = t.token_len < L;
    r.per_thought_flags.push_back(short_thought);
    r.uf += short_thought ? 1 : 0;
  }
  return r;
}

std::size_t switch_count(std::string_view full_text, const SwitchCueTable& cues) {
  return scan_text(full_text, cues).size();
}

LengthStats length_stats(std::span<const BenchmarkRecord> records) {
  LengthStats s;
  double sum_all = 0.0;
  double sum_correct = 0.0;
  for (const auto& rec : records) {
    for (const auto& sample : rec.samples) {
      sum_all += static_cast<double>(sample.tokens);
      ++s.n_all;
      if (sample.correct) {
        sum_correct += static_cast<double>(sample.tokens);
        ++s.n_correct;
      }
    }
  }
  if (s.n_all == 0) throw std::invalid_argument("length_stats needs at least one sample");
  s.mean_all = sum_all / static_cast<double>(s.n_all);
  s.mean_only_correct = s.n_correct == 0 ? 0.0 : sum_correct / static_cast<double>(s.n_correct);
  return s;
}

nlohmann::json length_stats_to_json(const LengthStats& s) {
  return {{"mean_all", s.mean_all},
          {"mean_only_correct", s.mean_only_correct},
          {"n_all", s.n_all},
          {"n_correct", s.n_correct}};
}

ReasoningTrace segment_trace_for_metrics(std::string_view full_text, const SwitchCueTable& cues,
                                         const TokenCounter& counter, std::string question) {
  ReasoningTrace trace;
  trace.question = std::move(question);
  trace.full_text = std::string(full_text);

  constexpr std::string_view kThinkEnd = "</think>";
  std::size_t thinking_end = full_text.size();
  if (auto pos = full_text.find(kThinkEnd); pos != std::string_view::npos) {
    thinking_end = pos;
    trace.solution = std::string(full_text.substr(pos + kThinkEnd.size()));
  }
  const auto thinking = full_text.substr(0, thinking_end);

  auto add = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    Thought t;
    t.index = trace.thoughts.size() + 1;
    t.start_offset = begin;
    t.end_offset = end;
    t.text = std::string(thinking.substr(begin, end - begin));
    t.token_len = counter(t.text);
    trace.thoughts.push_back(std::move(t));
  };

  std::size_t cursor = 0;
  for (const auto& m : scan_text(thinking, cues)) {
    add(cursor, m.match_start);
    cursor = m.match_end;
    // The space after a cue separates it from the next thought.
    while (cursor < thinking.size() && std::isspace(static_cast<unsigned char>(thinking[cursor])))
      ++cursor;
  }
  add(cursor, thinking.size());
  return trace;
}

MetricsReport build_metrics_report(std::span<const ReasoningTrace> traces,
                                   std::span<const std::size_t> grid, const SwitchCueTable& cues,
                                   std::optional<LengthStats> lengths) {
  MetricsReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.mean_uf.assign(grid.size(), 0.0);
  report.lengths = lengths;

  double switches = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& trace = traces[i];
    TraceRow row;
    row.trace_index = i;
    row.thoughts = trace.thoughts.size();
    row.switches = switch_count(trace.full_text, cues);
    for (const auto& t : trace.thoughts) row.thinking_tokens += t.token_len;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      row.uf.push_back(underthinking_frequency(trace, grid[g]).uf);
      report.mean_uf[g] += static_cast<double>(row.uf.back());
    }
    switches += static_cast<double>(row.switches);
    report.rows.push_back(std::move(row));
  }
  if (!traces.empty()) {
    const auto n = static_cast<double>(traces.size());
    for (auto& m : report.mean_uf) m /= n;
    report.switch_count_mean = switches / n;
  }
  return report;
}

nlohmann::json metrics_report_to_json(const MetricsReport& report) {
  nlohmann::json curve = nlohmann::json::array();
  for (std::size_t g = 0; g < report.grid.size(); ++g)
    curve.push_back({{"L", report.grid[g]}, {"mean_uf", report.mean_uf[g]}});
  nlohmann::json j = {{"uf_curve", std::move(curve)},
                      {"switch_count_mean", report.switch_count_mean},
                      {"traces", report.rows.size()},
                      {"segmentation", "cue-spans"}};
  j["length_stats"] = report.lengths ? length_stats_to_json(*report.lengths) : nlohmann::json(nullptr);
  return j;
}

std::string metrics_rows_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "trace,thoughts,switches,thinking_tokens";
  for (auto L : report.grid) out << ",uf_" << L;
  out << "\n";
  for (const auto& row : report.rows) {
    out << row.trace_index << ',' << row.thoughts << ',' << row.switches << ','
        << row.thinking_tokens;
    for (auto uf : row.uf) out << ',' << uf;
    out << "\n";
  }
  return out.str();
}

}  // namespace smartswitch
