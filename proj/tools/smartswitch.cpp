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

// smartswitch: generate | bench | analyze | serve-mock
//
// Exit codes: 0 success, 1 run failure (backend unreachable, failed
// session), 2 usage or validation error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smartswitch/mock_server.hpp"
#include "smartswitch/smartswitch.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smartswitch;

namespace {

constexpr int kRunFailure = 1;
constexpr int kUsageError = 2;

// Validation problems detected before any backend call.
struct UsageError : Error {
  using Error::Error;
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<double> tau;
  std::optional<std::size_t> max_interventions;
  std::optional<std::size_t> segment_threshold;
  std::optional<std::string> mapping;
  std::optional<std::string> segmentation;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_tokens;
  std::optional<std::size_t> parallelism;
  std::optional<std::string> llm_endpoint;
  std::optional<std::string> prm_endpoint;
  std::optional<std::string> script;
  std::string out;
};

// Backend selection pulled out of config files and manifests.
struct BackendSpec {
  std::optional<std::string> llm_endpoint;
  std::optional<std::string> prm_endpoint;
  std::optional<std::string> script;
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--config", o.config_path, "JSON engine config; flags override it")
      ->check(CLI::ExistingFile);
  app.add_option("--mode", o.mode,
                 "vanilla|smartswitch|always-intervene|standard-prompting|token-penalty");
  app.add_option("--tau", o.tau, "PRM score threshold (strict)");
  app.add_option("--max-interventions", o.max_interventions, "Intervention budget per session");
  app.add_option("--segment-threshold", o.segment_threshold, "Process split threshold in tokens");
  app.add_option("--mapping", o.mapping, "max|min|mean|median|weighted|last");
  app.add_option("--segmentation", o.segmentation, "v2|v3|v4");
  app.add_option("--samples", o.samples, "Samples per query");
  app.add_option("--seed", o.seed, "Seed base");
  app.add_option("--max-tokens", o.max_tokens, "Output token budget per session");
  app.add_option("--parallelism", o.parallelism, "Concurrent sessions");
  app.add_option("--llm-endpoint", o.llm_endpoint, "http://host:port[/path] of the LLM backend");
  app.add_option("--prm-endpoint", o.prm_endpoint, "http://host:port[/path] of the PRM");
  app.add_option("--script", o.script, "Scripted backend JSON (offline runs)")
      ->check(CLI::ExistingFile);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

// Strips backend keys from a config object so the rest can go through
// config_from_json, which rejects unknown keys.
void take_backend_keys(json& j, BackendSpec& backends, const fs::path& base_dir) {
  auto take = [&](const char* key, std::optional<std::string>& slot, bool is_path) {
    if (!j.contains(key)) return;
    auto value = j.at(key).get<std::string>();
    if (is_path && fs::path(value).is_relative()) value = (base_dir / value).string();
    slot = value;
    j.erase(key);
  };
  take("llm_endpoint", backends.llm_endpoint, false);
  take("prm_endpoint", backends.prm_endpoint, false);
  take("script", backends.script, true);
}

EngineConfig apply_config_json(json j, const EngineConfig& base, BackendSpec& backends,
                               const fs::path& base_dir) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  take_backend_keys(j, backends, base_dir);
  return config_from_json(j, base);
}

EngineConfig apply_flags(EngineConfig config, const CommonOptions& o, BackendSpec& backends) {
  if (o.mode) config.mode = parse_mode(*o.mode);
  if (o.tau) config.tau_score = *o.tau;
  if (o.max_interventions) config.max_interventions = *o.max_interventions;
  if (o.segment_threshold) config.segment_token_threshold = *o.segment_threshold;
  if (o.mapping) config.mapping_strategy = parse_mapping(*o.mapping);
  if (o.segmentation) config.segmentation = parse_segmentation(*o.segmentation);
  if (o.samples) config.samples_per_query = *o.samples;
  if (o.seed) config.seed_base = *o.seed;
  if (o.max_tokens) config.max_output_tokens = *o.max_tokens;
  if (o.parallelism) config.parallelism = *o.parallelism;
  if (o.llm_endpoint) backends.llm_endpoint = o.llm_endpoint;
  if (o.prm_endpoint) backends.prm_endpoint = o.prm_endpoint;
  if (o.script) backends.script = o.script;
  config.validate();
  return config;
}

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name); v && *v) return std::string(v);
  return std::nullopt;
}

struct Backends {
  std::unique_ptr<LlmClient> llm;
  std::unique_ptr<PrmClient> prm;
  std::string description;
};

// Precedence: explicit endpoint, then script, then environment.
Backends make_backends(const BackendSpec& want, const EngineConfig& config) {
  Backends b;
  std::optional<json> script;
  if (want.script) script = read_json_file(*want.script);

  try {
    if (want.llm_endpoint) {
      b.llm = std::make_unique<HttpLlmClient>(*want.llm_endpoint);
      b.description = "llm=" + *want.llm_endpoint;
    } else if (script) {
      b.llm = std::make_unique<ScriptedLlm>(ScriptedLlm::from_json(*script));
      b.description = "llm=script:" + *want.script;
    } else if (auto e = env("SMARTSWITCH_LLM_ENDPOINT")) {
      b.llm = std::make_unique<HttpLlmClient>(*e);
      b.description = "llm=" + *e;
    } else {
      throw UsageError(
          "no LLM backend: pass --llm-endpoint, --script or set SMARTSWITCH_LLM_ENDPOINT");
    }

    if (want.prm_endpoint) {
      b.prm = std::make_unique<HttpPrmClient>(*want.prm_endpoint);
      b.description += " prm=" + *want.prm_endpoint;
    } else if (script && script->is_object() && script->contains("prm")) {
      b.prm = std::make_unique<ScriptedPrm>(ScriptedPrm::from_json(script->at("prm")));
      b.description += " prm=script:" + *want.script;
    } else if (auto e = env("SMARTSWITCH_PRM_ENDPOINT")) {
      b.prm = std::make_unique<HttpPrmClient>(*e);
      b.description += " prm=" + *e;
    } else if (config.mode != Mode::SmartSwitch) {
      b.prm = std::make_unique<ScriptedPrm>(ScriptedPrm::failing());
      b.description += " prm=none";
    } else {
      throw UsageError(
          "smartswitch mode needs a PRM: pass --prm-endpoint, a script with a \"prm\" section "
          "or set SMARTSWITCH_PRM_ENDPOINT");
    }
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  return b;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << body;
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw UsageError("cannot create output directory " + dir.string());
}

// ---- generate ---------------------------------------------------------------

struct GenerateOptions {
  CommonOptions common;
  std::string problem;
  std::string file;
  bool json_output = false;
};

int run_generate(const GenerateOptions& o) {
  BackendSpec backends;
  EngineConfig config;
  if (!o.common.config_path.empty())
    config = apply_config_json(read_json_file(o.common.config_path), config, backends,
                               fs::path(o.common.config_path).parent_path());
  config = apply_flags(config, o.common, backends);

  std::string question = o.problem;
  if (!o.file.empty()) question = read_file(o.file);
  if (question.empty()) throw UsageError("empty problem text");

  const fs::path out = o.common.out.empty() ? fs::path("smartswitch-out") : fs::path(o.common.out);
  ensure_out_dir(out);
  auto b = make_backends(backends, config);

  GenerationOptions options;
  options.seed = o.common.seed;
  auto result = run_generation(question, config, *b.llm, *b.prm, default_cue_table(), options);

  write_text(out / "config.json", config_to_json(config).dump(2) + "\n");
  json record = trace_to_json(result.trace);
  record["status"] = to_string(result.status);
  record["interventions_used"] = result.interventions_used;
  record["tokens"] = result.tokens_generated;
  json events = json::array();
  for (const auto& e : result.events) events.push_back(event_to_json(e));
  record["events"] = std::move(events);
  if (result.error) record["error"] = *result.error;
  write_text(out / "trace.jsonl", record.dump() + "\n");

  if (o.json_output) {
    std::cout << generation_result_to_json(result).dump(2) << "\n";
  } else {
    std::cout << result.final_text << "\n\n--- events ---\n";
    for (const auto& e : result.events) std::cout << format_event(e) << "\n";
    std::cout << "--- status: " << to_string(result.status)
              << " interventions=" << result.interventions_used
              << " tokens=" << result.tokens_generated << "\n";
  }
  if (result.status == SessionStatus::Failed) {
    std::cerr << "smartswitch: generation failed: " << result.error.value_or("unknown error")
              << "\n";
    return kRunFailure;
  }
  return 0;
}

// ---- bench ------------------------------------------------------------------

struct BenchOptions {
  CommonOptions common;
  std::string manifest;
  std::string dataset;
  bool no_baseline = false;
};

std::string num(double v) { return json(v).dump(); }

int run_bench(const BenchOptions& o) {
  BackendSpec backends;
  EngineConfig config;
  std::string dataset_path = o.dataset;
  std::string out_path = o.common.out;

  // Manifest first, then config file, then flags.
  if (!o.manifest.empty()) {
    const fs::path dir = fs::path(o.manifest).parent_path();
    json m = read_json_file(o.manifest);
    if (!m.is_object()) throw UsageError("manifest must be a JSON object");
    auto resolve = [&](const std::string& p) {
      return fs::path(p).is_relative() ? (dir / p).string() : p;
    };
    for (const auto& [key, value] : m.items()) {
      if (key == "config") {
        if (value.is_string())
          config = apply_config_json(read_json_file(resolve(value.get<std::string>())), config,
                                     backends, dir);
        else
          config = apply_config_json(value, config, backends, dir);
      } else if (key == "dataset") {
        if (dataset_path.empty()) dataset_path = resolve(value.get<std::string>());
      } else if (key == "out") {
        if (out_path.empty()) out_path = resolve(value.get<std::string>());
      } else if (key == "mode") {
        config.mode = parse_mode(value.get<std::string>());
      } else if (key == "seed") {
        config.seed_base = value.get<std::uint64_t>();
      } else if (key == "llm_endpoint") {
        backends.llm_endpoint = value.get<std::string>();
      } else if (key == "prm_endpoint") {
        backends.prm_endpoint = value.get<std::string>();
      } else if (key == "script") {
        backends.script = resolve(value.get<std::string>());
      } else {
        throw UsageError("manifest: unknown key \"" + key + "\"");
      }
    }
  }
  if (!o.common.config_path.empty())
    config = apply_config_json(read_json_file(o.common.config_path), config, backends,
                               fs::path(o.common.config_path).parent_path());
  config = apply_flags(config, o.common, backends);

  if (dataset_path.empty()) throw UsageError("no dataset: pass --dataset or a manifest");
  std::vector<ProblemRecord> dataset;
  try {
    dataset = load_dataset(dataset_path);
  } catch (const ParseError& e) {
    throw UsageError(dataset_path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (dataset.empty()) throw UsageError(dataset_path + ": no problems");
  const fs::path out = out_path.empty() ? fs::path("smartswitch-bench") : fs::path(out_path);
  ensure_out_dir(out);
  auto b = make_backends(backends, config);

  BenchmarkOptions options;
  options.compare_with_vanilla = !o.no_baseline;
  const auto report = run_benchmark(dataset, config, *b.llm, *b.prm, default_cue_table(), options);
  write_run_outputs(report, config, out);

  std::printf("%-20s %-22s %-22s\n", "metric", "vanilla", std::string(to_string(config.mode)).c_str());
  auto row = [&](const char* name, double ModeRun::*field) {
    const std::string base = report.baseline ? num((*report.baseline).*field) : "-";
    std::printf("%-20s %-22s %-22s\n", name, base.c_str(), num(report.run.*field).c_str());
  };
  row("pass@1", &ModeRun::pass_at_1);
  row("mean_tokens", &ModeRun::mean_tokens);
  row("mean_interventions", &ModeRun::mean_interventions);
  std::printf("problems=%zu samples_per_query=%zu failed_samples=%zu out=%s\n", dataset.size(),
              config.samples_per_query, report.run.failed_samples, out.string().c_str());

  const std::size_t total = dataset.size() * config.samples_per_query;
  if (report.run.failed_samples == total) {
    std::cerr << "smartswitch: every sample failed; check the backends (" << b.description
              << ")\n";
    return kRunFailure;
  }
  return 0;
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeOptions {
  std::string config_path;
  std::vector<std::string> inputs;
  std::vector<std::size_t> grid;
  std::string out;
};

// Config keys: "L" (array of thresholds) and "out". Flags win.
AnalyzeOptions with_analyze_config(AnalyzeOptions o) {
  if (o.config_path.empty()) return o;
  const json c = read_json_file(o.config_path);
  if (!c.is_object()) throw UsageError("analyze config must be a JSON object");
  for (const auto& [key, value] : c.items()) {
    try {
      if (key == "L") {
        if (o.grid.empty()) o.grid = value.get<std::vector<std::size_t>>();
      } else if (key == "out") {
        if (o.out.empty()) o.out = value.get<std::string>();
      } else {
        throw UsageError("analyze config: unknown key \"" + key + "\"");
      }
    } catch (const json::exception& e) {
      throw UsageError("analyze config: bad \"" + key + "\": " + e.what());
    }
  }
  return o;
}

int run_analyze(const AnalyzeOptions& options) {
  const AnalyzeOptions o = with_analyze_config(options);
  const auto& cues = default_cue_table();
  std::vector<ReasoningTrace> traces;
  std::vector<SampleResult> samples;
  std::size_t files_used = 0;

  for (const auto& path : o.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::string line;
    std::size_t line_no = 0;
    std::size_t records = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j;
      try {
        j = json::parse(line);
        if (j.contains("thoughts"))
          traces.push_back(trace_from_json(j));
        else
          traces.push_back(segment_trace_for_metrics(j.at("full_text").get<std::string>(), cues,
                                                     default_token_counter(),
                                                     j.value("question", std::string{})));
      } catch (const std::exception& e) {
        throw UsageError(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (j.contains("correct") && j.contains("tokens")) {
        SampleResult s;
        s.correct = j.at("correct").get<bool>();
        s.tokens = j.at("tokens").get<std::size_t>();
        samples.push_back(std::move(s));
      }
      ++records;
    }
    if (records == 0) {
      std::cerr << "smartswitch: warning: " << path << " has no traces, skipped\n";
      continue;
    }
    ++files_used;
  }
  if (files_used == 0) throw UsageError("no traces to analyze");

  std::optional<LengthStats> lengths;
  if (!samples.empty()) {
    BenchmarkRecord all{"all", samples};
    lengths = length_stats(std::span<const BenchmarkRecord>(&all, 1));
  }
  const auto grid = o.grid.empty() ? default_uf_grid() : o.grid;
  const auto report = build_metrics_report(traces, grid, cues, lengths);
  auto j = metrics_report_to_json(report);

  if (!o.out.empty()) {
    const fs::path out(o.out);
    ensure_out_dir(out);
    write_text(out / "metrics.json", j.dump(2) + "\n");
    write_text(out / "metrics.csv", metrics_rows_csv(report));
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- serve-mock -------------------------------------------------------------

struct ServeOptions {
  std::string config_path;
  std::string script;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool host_set = false;
  bool port_set = false;
};

// Config keys: "script", "host", "port". Flags win.
ServeOptions with_serve_config(ServeOptions o) {
  if (o.config_path.empty()) return o;
  const json c = read_json_file(o.config_path);
  if (!c.is_object()) throw UsageError("serve-mock config must be a JSON object");
  const fs::path dir = fs::path(o.config_path).parent_path();
  for (const auto& [key, value] : c.items()) {
    try {
      if (key == "script") {
        if (o.script.empty()) {
          const fs::path p = value.get<std::string>();
          o.script = p.is_relative() ? (dir / p).string() : p.string();
        }
      } else if (key == "host") {
        if (!o.host_set) o.host = value.get<std::string>();
      } else if (key == "port") {
        if (!o.port_set) o.port = value.get<int>();
      } else {
        throw UsageError("serve-mock config: unknown key \"" + key + "\"");
      }
    } catch (const json::exception& e) {
      throw UsageError("serve-mock config: bad \"" + key + "\": " + e.what());
    }
  }
  if (o.script.empty()) throw UsageError("serve-mock needs --script");
  return o;
}

int run_serve(const ServeOptions& options) {
  const ServeOptions o = with_serve_config(options);
  const json script = read_json_file(o.script);
  std::unique_ptr<ScriptedLlm> llm;
  std::unique_ptr<ScriptedPrm> prm;
  try {
    llm = std::make_unique<ScriptedLlm>(ScriptedLlm::from_json(script));
    prm = std::make_unique<ScriptedPrm>(script.is_object() && script.contains("prm")
                                            ? ScriptedPrm::from_json(script.at("prm"))
                                            : ScriptedPrm::constant(0.5));
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  MockBackendServer server(*llm, *prm);
  std::cerr << "smartswitch: serving /generate and /score on http://" << o.host << ":" << o.port
            << "\n";
  if (!server.listen(o.host, o.port)) {
    std::cerr << "smartswitch: cannot listen on " << o.host << ":" << o.port << "\n";
    return kRunFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SmartSwitch: thought-switch monitoring for streaming LLM reasoning"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Run one monitored generation");
  add_common(*generate, gen.common);
  auto* problem_opt = generate->add_option("--problem", gen.problem, "Problem text");
  auto* file_opt = generate->add_option("--file", gen.file, "File holding the problem text")
                       ->check(CLI::ExistingFile);
  problem_opt->excludes(file_opt);
  generate->add_option("--out", gen.common.out, "Output directory (default smartswitch-out)");
  generate->add_flag("--json", gen.json_output, "Print the full result as JSON");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark and write summary outputs");
  add_common(*bench_cmd, bench.common);
  bench_cmd->add_option("--manifest", bench.manifest, "Run manifest JSON")
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--dataset", bench.dataset, "Dataset JSONL");
  bench_cmd->add_option("--out", bench.common.out, "Output directory (default smartswitch-bench)");
  bench_cmd->add_flag("--no-baseline", bench.no_baseline, "Skip the vanilla comparison run");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Underthinking metrics over trace files");
  analyze_cmd->add_option("--config", analyze.config_path, "JSON with \"L\" and \"out\" keys")
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("traces", analyze.inputs, "Trace JSONL files");
  analyze_cmd->add_option("--L", analyze.grid, "Length thresholds, e.g. 50,100,200")
      ->delimiter(',');
  analyze_cmd->add_option("--out", analyze.out, "Directory for metrics.json and metrics.csv");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve-mock", "Serve a scripted backend over HTTP");
  serve_cmd->add_option("--config", serve.config_path,
                        "JSON with \"script\", \"host\" and \"port\" keys")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--script", serve.script, "Scripted backend JSON")
      ->check(CLI::ExistingFile);
  auto* host_opt = serve_cmd->add_option("--host", serve.host, "Bind address");
  auto* port_opt = serve_cmd->add_option("--port", serve.port, "Port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) {
      if (gen.problem.empty() && gen.file.empty())
        throw UsageError("generate needs --problem or --file");
      return run_generate(gen);
    }
    if (*bench_cmd) return run_bench(bench);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*serve_cmd) {
      serve.host_set = host_opt->count() > 0;
      serve.port_set = port_opt->count() > 0;
      if (serve.script.empty() && serve.config_path.empty())
        throw UsageError("serve-mock needs --script or --config");
      return run_serve(serve);
    }
  } catch (const UsageError& e) {
    std::cerr << "smartswitch: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    std::cerr << "smartswitch: invalid configuration: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "smartswitch: " << e.what() << "\n";
    return kRunFailure;
  }
  return 0;
}
