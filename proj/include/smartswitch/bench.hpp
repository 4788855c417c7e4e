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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smartswitch/answers.hpp"
#include "smartswitch/config.hpp"
#include "smartswitch/cues.hpp"
#include "smartswitch/engine.hpp"
#include "smartswitch/metrics.hpp"
#include "smartswitch/records.hpp"

namespace smartswitch {

/// Dataset JSONL: {"id", "problem", "answer", "level"?} per line. Blank lines
/// are skipped. Throws ParseError naming the line on a malformed record or a
/// duplicate id.
std::vector<ProblemRecord> parse_dataset(std::istream& in);
std::vector<ProblemRecord> load_dataset(const std::filesystem::path& path);

/// Mean over problems of the fraction of correct samples. Throws
/// std::invalid_argument on no records or a record without samples.
double pass_at_1(std::span<const BenchmarkRecord> records);

/// FNV-1a over (seed_base, problem_id, sample_index).
std::uint64_t sample_seed(std::string_view problem_id, std::size_t sample_index,
                          std::uint64_t seed_base = 0);

/// One sample's full outcome, kept for the per-sample trace file.
struct SampleRun {
  std::string problem_id;
  std::size_t sample_index = 0;
  std::uint64_t seed = 0;
  GenerationResult generation;
  SampleResult result;
};

struct ModeRun {
  Mode mode = Mode::Vanilla;
  std::vector<BenchmarkRecord> records;
  std::vector<SampleRun> samples;  // problem-major, sample-minor
  double pass_at_1 = 0.0;
  double mean_tokens = 0.0;
  double mean_interventions = 0.0;
  std::size_t failed_samples = 0;
  MetricsReport metrics;
};

struct BenchmarkReport {
  ModeRun run;
  std::optional<ModeRun> baseline;  // vanilla, when run.mode is not vanilla
};

struct BenchmarkOptions {
  AnswerChecker checker = answers_equivalent;
  bool compare_with_vanilla = true;
  std::vector<std::size_t> uf_grid = default_uf_grid();
  TokenCounter token_counter = default_token_counter();
};

/// Runs config.samples_per_query sessions per problem in config.mode (and in
/// vanilla mode for the comparison). Per-sample failures are recorded and the
/// run continues. Samples run on up to config.parallelism threads; results
/// do not depend on scheduling.
BenchmarkReport run_benchmark(std::span<const ProblemRecord> dataset, const EngineConfig& config,
                              LlmClient& llm, PrmClient& prm, const SwitchCueTable& cues,
                              const BenchmarkOptions& options = {});

/// Deterministic summary: no wall-clock values.
nlohmann::json summary_json(const BenchmarkReport& report, const EngineConfig& config);
std::string comparison_csv(const BenchmarkReport& report);
nlohmann::json sample_record_json(const SampleRun& sample, Mode mode);

/// Writes traces.jsonl (and traces_vanilla.jsonl), summary.json,
/// comparison.csv and the effective config.json into `out_dir`.
void write_run_outputs(const BenchmarkReport& report, const EngineConfig& config,
                       const std::filesystem::path& out_dir);

}  // namespace smartswitch
