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

#include "smartswitch/trace.hpp"

#include "smartswitch/errors.hpp"

namespace smartswitch {

using nlohmann::json;

void validate_trace(const ReasoningTrace& trace) {
  std::size_t prev_end = 0;
  for (const auto& t : trace.thoughts) {
    if (t.start_offset >= t.end_offset)
      throw InvariantError("thought " + std::to_string(t.index) + " has an empty span");
    if (t.end_offset > trace.full_text.size())
      throw InvariantError("thought " + std::to_string(t.index) + " extends past full_text");
    if (t.start_offset < prev_end)
      throw InvariantError("thought " + std::to_string(t.index) + " overlaps its predecessor");
    if (trace.full_text.compare(t.start_offset, t.end_offset - t.start_offset, t.text) != 0)
      throw InvariantError("thought " + std::to_string(t.index) + " text does not match its span");
    for (double s : t.process_scores)
      if (!(s >= 0.0 && s <= 1.0)) throw InvariantError("process score outside [0,1]");
    if (t.potential_score && !(*t.potential_score >= 0.0 && *t.potential_score <= 1.0))
      throw InvariantError("potential score outside [0,1]");
    prev_end = t.end_offset;
  }
}

json trace_to_json(const ReasoningTrace& trace) {
  json thoughts = json::array();
  for (const auto& t : trace.thoughts) {
    thoughts.push_back({
        {"index", t.index},
        {"start", t.start_offset},
        {"end", t.end_offset},
        {"token_len", t.token_len},
        {"process_scores", t.process_scores},
        {"potential_score", t.potential_score ? json(*t.potential_score) : json(nullptr)},
    });
  }
  return {{"question", trace.question},
          {"full_text", trace.full_text},
          {"thoughts", std::move(thoughts)},
          {"solution", trace.solution}};
}

ReasoningTrace trace_from_json(const json& record) {
  if (!record.is_object()) throw ParseError("trace record must be a JSON object");
  ReasoningTrace trace;
  try {
    trace.question = record.at("question").get<std::string>();
    trace.full_text = record.at("full_text").get<std::string>();
    trace.solution = record.value("solution", std::string{});
    for (const auto& jt : record.at("thoughts")) {
      Thought t;
      t.index = jt.at("index").get<std::size_t>();
      t.start_offset = jt.at("start").get<std::size_t>();
      t.end_offset = jt.at("end").get<std::size_t>();
      t.token_len = jt.at("token_len").get<std::size_t>();
      if (jt.contains("process_scores"))
        t.process_scores = jt.at("process_scores").get<std::vector<double>>();
      if (jt.contains("potential_score") && !jt.at("potential_score").is_null())
        t.potential_score = jt.at("potential_score").get<double>();
      if (t.start_offset >= t.end_offset || t.end_offset > trace.full_text.size())
        throw ParseError("thought " + std::to_string(t.index) + " has an invalid span");
      t.text = trace.full_text.substr(t.start_offset, t.end_offset - t.start_offset);
      trace.thoughts.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed trace record: ") + e.what());
  }
  try {
    validate_trace(trace);
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
  return trace;
}

std::string trace_to_line(const ReasoningTrace& trace) { return trace_to_json(trace).dump(); }

ReasoningTrace trace_from_line(const std::string& line, std::size_t line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  try {
    return trace_from_json(record);
  } catch (const ParseError& e) {
    if (line_no == 0) throw;
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace smartswitch
