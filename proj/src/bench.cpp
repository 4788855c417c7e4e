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

#include "smartswitch/bench.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "smartswitch/errors.hpp"

namespace smartswitch {

using nlohmann::json;

std::vector<ProblemRecord> parse_dataset(std::istream& in) {
  std::vector<ProblemRecord> out;
  std::unordered_set<std::string> ids;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw ParseError("invalid JSON", line_no);
    }
    if (!j.is_object()) throw ParseError("record must be a JSON object", line_no);
    ProblemRecord rec;
    for (const char* key : {"id", "problem", "answer"}) {
      if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"", line_no);
    }
    try {
      // Numeric ids and answers are common in the wild; keep their text.
      rec.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
      rec.problem = j["problem"].get<std::string>();
      rec.answer = j["answer"].is_string() ? j["answer"].get<std::string>() : j["answer"].dump();
      if (j.contains("level") && !j["level"].is_null()) rec.level = j["level"].get<int>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad field type: ") + e.what(), line_no);
    }
    if (rec.problem.empty()) throw ParseError("empty \"problem\"", line_no);
    if (rec.answer.empty()) throw ParseError("empty \"answer\"", line_no);
    if (!ids.insert(rec.id).second) throw ParseError("duplicate id \"" + rec.id + "\"", line_no);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ProblemRecord> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset " + path.string());
  try {
    return parse_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

double pass_at_1(std::span<const BenchmarkRecord> records) {
  if (records.empty()) throw std::invalid_argument("pass_at_1 needs at least one record");
  double total = 0.0;
  for (const auto& rec : records) {
    if (rec.samples.empty())
      throw std::invalid_argument("record " + rec.problem_id + " has no samples");
    std::size_t correct = 0;
    for (const auto& s : rec.samples) correct += s.correct ? 1 : 0;
    total += static_cast<double>(correct) / static_cast<double>(rec.samples.size());
  }
  return total / static_cast<double>(records.size());
}

std::uint64_t sample_seed(std::string_view problem_id, std::size_t sample_index,
                          std::uint64_t seed_base) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  for (int i = 0; i < 8; ++i) {
    unsigned char b = static_cast<unsigned char>(seed_base >> (8 * i));
    mix(&b, 1);
  }
  mix(problem_id.data(), problem_id.size());
  const unsigned char sep = 0;
  mix(&sep, 1);
  for (int i = 0; i < 8; ++i) {
    unsigned char b = static_cast<unsigned char>(static_cast<std::uint64_t>(sample_index) >> (8 * i));
    mix(&b, 1);
  }
  return h;
}

namespace {

ModeRun run_mode(std::span<const ProblemRecord> dataset, const EngineConfig& config, LlmClient& llm,
                 PrmClient& prm, const SwitchCueTable& cues, const BenchmarkOptions& options) {
  const std::size_t k = config.samples_per_query;
  const std::size_t total = dataset.size() * k;

  ModeRun run;
  run.mode = config.mode;
  run.samples.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next.fetch_add(1); job < total; job = next.fetch_add(1)) {
      const auto& problem = dataset[job / k];
      auto& sample = run.samples[job];
      sample.problem_id = problem.id;
      sample.sample_index = job % k;
      sample.seed = sample_seed(problem.id, sample.sample_index, config.seed_base);

      GenerationOptions gen;
      gen.seed = sample.seed;
      gen.token_counter = options.token_counter;
      try {
        sample.generation = run_generation(problem.problem, config, llm, prm, cues, gen);
      } catch (const std::exception& e) {
        sample.generation.status = SessionStatus::Failed;
        sample.generation.error = e.what();
      }

      auto& r = sample.result;
      r.final_text = sample.generation.final_text;
      r.extracted_answer = extract_answer(r.final_text);
      r.correct = r.extracted_answer && options.checker(*r.extracted_answer, problem.answer);
      r.tokens = sample.generation.tokens_generated;
      r.wall_time = sample.generation.wall_time;
      r.interventions_used = sample.generation.interventions_used;
      r.status = std::string(to_string(sample.generation.status));
    }
  };

  const auto threads = std::min(config.parallelism, std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<ReasoningTrace> traces;
  traces.reserve(total);
  double tokens = 0.0;
  double interventions = 0.0;
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    BenchmarkRecord rec{dataset[p].id, {}};
    for (std::size_t s = 0; s < k; ++s) {
      const auto& sample = run.samples[p * k + s];
      rec.samples.push_back(sample.result);
      traces.push_back(sample.generation.trace);
      tokens += static_cast<double>(sample.result.tokens);
      interventions += static_cast<double>(sample.result.interventions_used);
      if (sample.generation.status == SessionStatus::Failed) ++run.failed_samples;
    }
    run.records.push_back(std::move(rec));
  }
  if (total > 0) {
    run.pass_at_1 = pass_at_1(run.records);
    run.mean_tokens = tokens / static_cast<double>(total);
    run.mean_interventions = interventions / static_cast<double>(total);
    run.metrics = build_metrics_report(traces, options.uf_grid, cues, length_stats(run.records));
  }
  return run;
}

json mode_run_json(const ModeRun& run) {
  json per_problem = json::array();
  for (const auto& rec : run.records) {
    std::size_t correct = 0;
    std::size_t interventions = 0;
    for (const auto& s : rec.samples) {
      correct += s.correct ? 1 : 0;
      interventions += s.interventions_used;
    }
    per_problem.push_back({{"id", rec.problem_id},
                           {"correct", correct},
                           {"samples", rec.samples.size()},
                           {"interventions", interventions},
                           {"pass_at_1", static_cast<double>(correct) /
                                             static_cast<double>(rec.samples.size())}});
  }
  return {{"mode", to_string(run.mode)},
          {"pass_at_1", run.pass_at_1},
          {"mean_tokens", run.mean_tokens},
          {"mean_interventions", run.mean_interventions},
          {"failed_samples", run.failed_samples},
          {"metrics", metrics_report_to_json(run.metrics)},
          {"per_problem", std::move(per_problem)}};
}

double mean_uf_at(const ModeRun& run, std::size_t L) {
  for (std::size_t i = 0; i < run.metrics.grid.size(); ++i)
    if (run.metrics.grid[i] == L) return run.metrics.mean_uf[i];
  return 0.0;
}

}  // namespace

BenchmarkReport run_benchmark(std::span<const ProblemRecord> dataset, const EngineConfig& config,
                              LlmClient& llm, PrmClient& prm, const SwitchCueTable& cues,
                              const BenchmarkOptions& options) {
  config.validate();
  if (dataset.empty()) throw ConfigError("dataset is empty");
  BenchmarkReport report;
  report.run = run_mode(dataset, config, llm, prm, cues, options);
  if (options.compare_with_vanilla && config.mode != Mode::Vanilla) {
    EngineConfig vanilla = config;
    vanilla.mode = Mode::Vanilla;
    report.baseline = run_mode(dataset, vanilla, llm, prm, cues, options);
  }
  return report;
}

json summary_json(const BenchmarkReport& report, const EngineConfig& config) {
  json echoed = config_to_json(config);
  echoed.erase("parallelism");  // results do not depend on it
  json j = {{"problems", report.run.records.size()},
            {"samples_per_query", config.samples_per_query},
            {"config", std::move(echoed)},
            {"run", mode_run_json(report.run)}};
  const ModeRun& base = report.baseline ? *report.baseline : report.run;
  j["baseline"] = report.baseline ? mode_run_json(*report.baseline) : json(nullptr);
  j["delta"] = {{"pass_at_1", report.run.pass_at_1 - base.pass_at_1},
                {"mean_tokens", report.run.mean_tokens - base.mean_tokens},
                {"mean_interventions", report.run.mean_interventions - base.mean_interventions},
                {"switch_count_mean",
                 report.run.metrics.switch_count_mean - base.metrics.switch_count_mean}};
  return j;
}

std::string comparison_csv(const BenchmarkReport& report) {
  const ModeRun& base = report.baseline ? *report.baseline : report.run;
  std::ostringstream out;
  out.precision(17);
  out << "metric,vanilla," << to_string(report.run.mode) << ",delta\n";
  auto row = [&](std::string_view name, double a, double b) {
    out << name << ',' << a << ',' << b << ',' << (b - a) << "\n";
  };
  row("pass_at_1", base.pass_at_1, report.run.pass_at_1);
  row("mean_tokens", base.mean_tokens, report.run.mean_tokens);
  row("mean_interventions", base.mean_interventions, report.run.mean_interventions);
  row("switch_count_mean", base.metrics.switch_count_mean, report.run.metrics.switch_count_mean);
  row("mean_uf_L100", mean_uf_at(base, 100), mean_uf_at(report.run, 100));
  return out.str();
}

json sample_record_json(const SampleRun& sample, Mode mode) {
  json j = trace_to_json(sample.generation.trace);
  json events = json::array();
  for (const auto& e : sample.generation.events) events.push_back(event_to_json(e));
  j["problem_id"] = sample.problem_id;
  j["sample_index"] = sample.sample_index;
  j["seed"] = sample.seed;
  j["mode"] = to_string(mode);
  j["extracted_answer"] =
      sample.result.extracted_answer ? json(*sample.result.extracted_answer) : json(nullptr);
  j["correct"] = sample.result.correct;
  j["tokens"] = sample.result.tokens;
  j["wall_time"] = sample.result.wall_time;
  j["interventions_used"] = sample.result.interventions_used;
  j["status"] = sample.result.status;
  j["events"] = std::move(events);
  if (sample.generation.error) j["error"] = *sample.generation.error;
  return j;
}

void write_run_outputs(const BenchmarkReport& report, const EngineConfig& config,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (out_dir / name).string());
    f << body;
  };
  auto traces = [&](const ModeRun& run) {
    std::string body;
    for (const auto& s : run.samples) body += sample_record_json(s, run.mode).dump() + "\n";
    return body;
  };
  write("traces.jsonl", traces(report.run));
  if (report.baseline) write("traces_vanilla.jsonl", traces(*report.baseline));
  write("summary.json", summary_json(report, config).dump(2) + "\n");
  write("comparison.csv", comparison_csv(report));
  write("config.json", config_to_json(config).dump(2) + "\n");
}

}  // namespace smartswitch
