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

#include <doctest.h>

#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "../support/fixtures.hpp"
#include "smartswitch/smartswitch.hpp"

using namespace smartswitch;
using nlohmann::json;

TEST_CASE("default cue table matches the fixture phrase for phrase") {
  const auto expected = json::parse(fixtures::read("cue_table.json"));
  const auto& table = default_cue_table();
  REQUIRE(table.size() == expected.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table.cues()[i].phrase == expected[i]["phrase"].get<std::string>());
    const auto cat = expected[i]["category"].get<std::string>() == "MethodShift"
                         ? CueCategory::MethodShift
                         : CueCategory::SimpleAlternative;
    CHECK(table.cues()[i].category == cat);
  }
}

TEST_CASE("cue table lookups") {
  const auto& table = default_cue_table();
  REQUIRE(table.find("Alternatively,") != nullptr);
  CHECK(table.find("Alternatively,")->category == CueCategory::SimpleAlternative);
  REQUIRE(table.find("Wait, let me try another approach") != nullptr);
  CHECK(table.find("Wait, let me try another approach")->category == CueCategory::MethodShift);
  CHECK(table.find("alternatively,") == nullptr);
  CHECK(table.longest_phrase_length() == std::string("Wait, let me try another approach").size());
  std::set<std::string> unique;
  for (const auto& c : table) unique.insert(c.phrase);
  CHECK(unique.size() == 11);
}

TEST_CASE("cue table rejects empty and duplicate phrases") {
  CHECK_THROWS_AS(SwitchCueTable({{"", CueCategory::SimpleAlternative}}), ConfigError);
  CHECK_THROWS_AS(SwitchCueTable({{"A,", CueCategory::SimpleAlternative},
                                  {"A,", CueCategory::MethodShift}}),
                  ConfigError);
}

TEST_CASE("prompt assets are byte-exact") {
  CHECK(default_deepen_prompt() == fixtures::read("prompts/deepen.txt"));
  CHECK(universal_prm_template() == fixtures::read("prompts/universal_prm.txt"));
  CHECK(qwen_prm_template() == fixtures::read("prompts/qwen_prm.txt"));
  CHECK(process_division_prompt() == fixtures::read("prompts/process_division.txt"));
  CHECK(tip_prompt_template() == fixtures::read("prompts/tip.txt"));
}

TEST_CASE("deepen prompt shape") {
  const std::string d(default_deepen_prompt());
  CHECK(d.starts_with("Wait, this seems like a promising idea."));
  CHECK(d.ends_with("Continue exploring this direction thoroughly."));
  CHECK(d.find('\n') == std::string::npos);
  CHECK(d.size() == 152);
}

TEST_CASE("universal PRM rendering") {
  const std::vector<std::string> steps{"step one", "step two"};
  const auto r = render_universal_prm_prompt("What is 1+1?", steps);
  CHECK(r ==
        "## System message\nYou are a helpful assistant.\n\n## User query\nWhat is 1+1?\n"
        "The reference answer is: There is no reference answer for this question.\n\n"
        "## Assistant response:\n<Special-Token> step one <Special-Token>\n"
        "<Special-Token> step two <Special-Token>");
  CHECK(render_qwen_prm_prompt("Q", steps, "<x>").ends_with("<x> step one <x>\n<x> step two <x>"));
}

TEST_CASE("template rendering") {
  CHECK(render_prompt_template("Problem: {{question}}\nAnswer:", "2+2") == "Problem: 2+2\nAnswer:");
  const auto tip = render_tip_prompt("P1");
  CHECK(tip.find("{{problem}}") == std::string::npos);
  CHECK(tip.find("P1") != std::string::npos);
  CHECK(standard_prompting_instruction() ==
        "Think step by step. Explore each idea thoroughly before moving on.");
}

TEST_CASE("approximate token counter") {
  CHECK(approx_token_count("") == 0);
  CHECK(approx_token_count("a") == 1);
  CHECK(approx_token_count("abcd") == 1);
  CHECK(approx_token_count("abcde") == 2);
  CHECK(default_token_counter()(std::string(400, 'x')) == 100);
}

TEST_CASE("engine config defaults") {
  const EngineConfig c;
  CHECK(c.tau_score == 0.7);
  CHECK(c.max_interventions == 3);
  CHECK(c.segment_token_threshold == 200);
  CHECK(c.mapping_strategy == MappingStrategy::Last);
  CHECK(c.temperature == 0.6);
  CHECK(c.top_p == 0.95);
  CHECK(c.max_output_tokens == 32768);
  CHECK(c.samples_per_query == 32);
  CHECK(c.mode == Mode::SmartSwitch);
  CHECK(c.segmentation == SegmentationStrategy::Adaptive);
  CHECK(c.deepen_prompt == default_deepen_prompt());
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("engine config validation") {
  EngineConfig c;
  c.tau_score = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.segment_token_threshold = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.deepen_prompt.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.mode = Mode::Vanilla;
  CHECK_NOTHROW(c.validate());
  c = {};
  c.prompt_template = "no placeholder";
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("engine config json round trip and unknown keys") {
  EngineConfig c;
  c.mode = Mode::TokenPenalty;
  c.tau_score = 0.55;
  c.mapping_strategy = MappingStrategy::WeightedAverage;
  c.segmentation = SegmentationStrategy::Grouped;
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK_THROWS_AS(config_from_json(json{{"tua_score", 0.5}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"mode", "fast"}}), ConfigError);
  const auto partial = config_from_json(json{{"max_interventions", 5}});
  CHECK(partial.max_interventions == 5);
  CHECK(partial.tau_score == 0.7);
}

TEST_CASE("enum names") {
  for (auto m : {Mode::Vanilla, Mode::SmartSwitch, Mode::AlwaysIntervene, Mode::StandardPrompting,
                 Mode::TokenPenalty})
    CHECK(parse_mode(to_string(m)) == m);
  for (auto s : {MappingStrategy::Max, MappingStrategy::Min, MappingStrategy::Mean,
                 MappingStrategy::Median, MappingStrategy::WeightedAverage, MappingStrategy::Last})
    CHECK(parse_mapping(to_string(s)) == s);
  CHECK(parse_mode("always-intervene") == Mode::AlwaysIntervene);
  CHECK(parse_mapping("weighted") == MappingStrategy::WeightedAverage);
  CHECK(parse_segmentation("v4") == SegmentationStrategy::Adaptive);
  CHECK_THROWS_AS(parse_mapping("avg"), ConfigError);
}

namespace {

ReasoningTrace sample_trace() {
  ReasoningTrace t;
  t.question = "Q";
  t.full_text = "First idea. Alternatively, second idea.</think>Answer \\boxed{1}";
  Thought a;
  a.index = 1;
  a.start_offset = 0;
  a.end_offset = 12;
  a.text = t.full_text.substr(0, 12);
  a.token_len = 3;
  a.process_scores = {0.25};
  a.potential_score = 0.25;
  Thought b;
  b.index = 2;
  b.start_offset = 26;
  b.end_offset = 39;
  b.text = t.full_text.substr(26, 13);
  b.token_len = 4;
  t.thoughts = {a, b};
  t.solution = t.full_text.substr(47);
  return t;
}

}  // namespace

TEST_CASE("trace record round trip") {
  const auto t = sample_trace();
  CHECK_NOTHROW(validate_trace(t));
  const auto line = trace_to_line(t);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(trace_from_line(line) == t);
  const auto j = trace_to_json(t);
  for (const char* key : {"question", "full_text", "thoughts", "solution"}) CHECK(j.contains(key));
  for (const char* key : {"index", "start", "end", "token_len", "process_scores", "potential_score"})
    CHECK(j["thoughts"][0].contains(key));
}

TEST_CASE("trace validation") {
  auto t = sample_trace();
  t.thoughts[1].start_offset = 5;  // overlaps the first thought
  CHECK_THROWS(validate_trace(t));
  t = sample_trace();
  t.thoughts[0].process_scores = {1.5};
  CHECK_THROWS(validate_trace(t));
  t = sample_trace();
  t.thoughts[0].text = "different";
  CHECK_THROWS(validate_trace(t));
  CHECK_THROWS_AS(trace_from_line("{not json", 7), ParseError);
  try {
    trace_from_line("{not json", 7);
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
  }
}

TEST_CASE("trace round trip property") {
  // Random cue-delimited texts segmented for metrics always survive the
  // record format unchanged.
  std::mt19937_64 rng(11);
  const auto& cues = default_cue_table();
  std::uniform_int_distribution<int> n(0, 6);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    const int k = n(rng);
    for (int j = 0; j < k; ++j) {
      text += "part " + std::to_string(rng() % 1000) + " ";
      text += cues.cues()[rng() % cues.size()].phrase;
    }
    text += " tail";
    if (rng() % 2) text += "</think>final \\boxed{" + std::to_string(i) + "}";
    const auto trace = segment_trace_for_metrics(text, cues, default_token_counter(), "q");
    CHECK(trace_from_line(trace_to_line(trace)) == trace);
    for (const auto& th : trace.thoughts) CHECK(th.end_offset - th.start_offset == th.text.size());
  }
}
