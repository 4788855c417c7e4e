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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smartswitch/smartswitch.hpp"

namespace py = pybind11;
using namespace smartswitch;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python wrapper does the decoding.
json parse_arg(const std::string& text, const char* what) {
  if (text.empty()) return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

EngineConfig config_arg(const std::string& text) {
  EngineConfig config = config_from_json(parse_arg(text, "config"));
  config.validate();
  return config;
}

using Hit = std::tuple<std::size_t, std::size_t, std::string, std::string>;

std::vector<Hit> hits(const std::vector<CueMatch>& ms) {
  std::vector<Hit> out;
  for (const auto& m : ms)
    out.emplace_back(m.match_start, m.match_end, m.cue.phrase, std::string(to_string(m.cue.category)));
  return out;
}

struct Backends {
  std::unique_ptr<LlmClient> llm;
  std::unique_ptr<PrmClient> prm;
};

Backends make_backends(const json& script, const std::string& llm_endpoint,
                       const std::string& prm_endpoint) {
  Backends b;
  if (!llm_endpoint.empty())
    b.llm = std::make_unique<HttpLlmClient>(llm_endpoint);
  else if (!script.empty())
    b.llm = std::make_unique<ScriptedLlm>(ScriptedLlm::from_json(script));
  else
    throw ConfigError("need a script or an llm_endpoint");
  if (!prm_endpoint.empty())
    b.prm = std::make_unique<HttpPrmClient>(prm_endpoint);
  else if (script.is_object() && script.contains("prm"))
    b.prm = std::make_unique<ScriptedPrm>(ScriptedPrm::from_json(script.at("prm")));
  else
    b.prm = std::make_unique<ScriptedPrm>(ScriptedPrm::failing());
  return b;
}

std::string generate(const std::string& question, const std::string& config_json,
                     const std::string& script_json, const std::string& llm_endpoint,
                     const std::string& prm_endpoint, std::optional<std::uint64_t> seed) {
  const EngineConfig config = config_arg(config_json);
  auto b = make_backends(parse_arg(script_json, "script"), llm_endpoint, prm_endpoint);
  GenerationOptions options;
  options.seed = seed;
  GenerationResult result;
  {
    py::gil_scoped_release release;
    result = run_generation(question, config, *b.llm, *b.prm, default_cue_table(), options);
  }
  return generation_result_to_json(result).dump();
}

std::string bench(const std::string& dataset_path, const std::string& config_json,
                  const std::string& script_json, const std::string& llm_endpoint,
                  const std::string& prm_endpoint, bool compare_with_vanilla) {
  const EngineConfig config = config_arg(config_json);
  const auto dataset = load_dataset(dataset_path);
  auto b = make_backends(parse_arg(script_json, "script"), llm_endpoint, prm_endpoint);
  BenchmarkOptions options;
  options.compare_with_vanilla = compare_with_vanilla;
  json summary;
  {
    py::gil_scoped_release release;
    summary = summary_json(run_benchmark(dataset, config, *b.llm, *b.prm, default_cue_table(), options),
                           config);
  }
  return summary.dump();
}

}  // namespace

PYBIND11_MODULE(_smartswitch, m) {
  m.doc() = "SmartSwitch core bindings";

  auto base = py::register_exception<Error>(m, "SmartSwitchError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BackendError>(m, "BackendError", base.ptr());
  py::register_exception<ScoringError>(m, "ScoringError", base.ptr());
  py::register_exception<ProtocolError>(m, "ProtocolError", base.ptr());

  m.def("cue_table", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : default_cue_table()) out.emplace_back(c.phrase, to_string(c.category));
    return out;
  });
  m.def("deepen_prompt", [] { return std::string(default_deepen_prompt()); });
  m.def("universal_prm_template", [] { return std::string(universal_prm_template()); });
  m.def("render_universal_prm_prompt",
        [](const std::string& question, const std::vector<std::string>& steps) {
          return render_universal_prm_prompt(question, steps);
        });
  m.def("default_config", [] { return config_to_json(EngineConfig{}).dump(); });
  m.def("validate_config",
        [](const std::string& config_json) {
          return config_to_json(config_arg(config_json)).dump();
        });

  m.def("scan_text", [](const std::string& text) { return hits(scan_text(text, default_cue_table())); });
  py::class_<StreamScanner>(m, "StreamScanner")
      .def(py::init([](std::size_t offset) {
             return StreamScanner(default_cue_table(), offset);
           }),
           py::arg("offset") = 0)
      .def("feed", [](StreamScanner& s, const std::string& chunk) { return hits(s.feed(chunk)); })
      .def("finish", [](StreamScanner& s) { return hits(s.finish()); })
      .def("reset", &StreamScanner::reset)
      .def_property_readonly("pending_tail", &StreamScanner::pending_tail)
      .def_property_readonly("offset", &StreamScanner::absolute_offset);

  m.def("map_scores", [](const std::vector<double>& scores, const std::string& strategy) {
    return map_scores(scores, parse_mapping(strategy));
  });
  m.def(
      "segment",
      [](const std::string& text, const std::string& strategy, std::size_t threshold,
         std::size_t group_size) {
        EngineConfig c;
        c.segmentation = parse_segmentation(strategy);
        c.segment_token_threshold = threshold;
        c.group_size = group_size;
        std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t>> out;
        for (const auto& p : segment_thought(text, c))
          out.emplace_back(p.text, p.token_len, p.ordinal, p.offset);
        return out;
      },
      py::arg("text"), py::arg("strategy") = "v4", py::arg("threshold") = 200,
      py::arg("group_size") = 5);
  m.def("approx_token_count", [](const std::string& text) { return approx_token_count(text); });

  m.def("switch_count", [](const std::string& text) { return switch_count(text, default_cue_table()); });
  m.def("segment_trace", [](const std::string& full_text, const std::string& question) {
    return trace_to_json(segment_trace_for_metrics(full_text, default_cue_table(),
                                                   default_token_counter(), question))
        .dump();
  }, py::arg("full_text"), py::arg("question") = "");
  m.def("underthinking_frequency", [](const std::string& trace_json, std::size_t L) {
    return underthinking_frequency(trace_from_json(parse_arg(trace_json, "trace")), L).uf;
  });
  m.def("extract_answer", [](const std::string& text) { return extract_answer(text); });
  m.def("answers_equivalent", [](const std::string& a, const std::string& b) {
    return answers_equivalent(a, b);
  });
  m.def("pass_at_1", [](const std::vector<std::vector<bool>>& correct) {
    std::vector<BenchmarkRecord> records;
    for (std::size_t i = 0; i < correct.size(); ++i) {
      BenchmarkRecord r{std::to_string(i), {}};
      for (bool c : correct[i]) {
        SampleResult s;
        s.correct = c;
        r.samples.push_back(s);
      }
      records.push_back(std::move(r));
    }
    return pass_at_1(records);
  });

  m.def("generate", &generate, py::arg("question"), py::arg("config_json") = "",
        py::arg("script_json") = "", py::arg("llm_endpoint") = "", py::arg("prm_endpoint") = "",
        py::arg("seed") = py::none());
  m.def("bench", &bench, py::arg("dataset_path"), py::arg("config_json") = "",
        py::arg("script_json") = "", py::arg("llm_endpoint") = "", py::arg("prm_endpoint") = "",
        py::arg("compare_with_vanilla") = true);
}
