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

// Acceptance suite: one PASS/FAIL line per criterion, with its runtime and
// budget. Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"
#include "smartswitch/mock_server.hpp"
#include "smartswitch/smartswitch.hpp"

#ifndef SMARTSWITCH_CLI
#error "SMARTSWITCH_CLI must point at the smartswitch binary"
#endif

using namespace smartswitch;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// First failure wins; later checks still run but keep the first message.
struct Check {
  std::string failure;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<void(Check&)> body;
};

// ---- criteria ---------------------------------------------------------------

void cue_table_fidelity(Check& c) {
  const auto expected = json::parse(fixtures::read("cue_table.json"));
  const auto& table = default_cue_table();
  c.expect(table.size() == 11, "cue table size " + std::to_string(table.size()));
  c.expect(expected.size() == table.size(), "fixture and table sizes differ");
  for (std::size_t i = 0; i < std::min(expected.size(), table.size()); ++i) {
    const auto& cue = table.cues()[i];
    const std::string phrase = expected[i]["phrase"];
    const CueCategory cat = expected[i]["category"] == "MethodShift" ? CueCategory::MethodShift
                                                                     : CueCategory::SimpleAlternative;
    c.expect(cue.phrase == phrase, "phrase " + std::to_string(i) + " is \"" + cue.phrase + "\"");
    c.expect(cue.category == cat, "category of \"" + phrase + "\"");
  }
  c.expect(default_deepen_prompt() == fixtures::read("prompts/deepen.txt"), "deepen prompt bytes");
  c.expect(default_deepen_prompt().size() == 152, "deepen prompt length");
  c.expect(universal_prm_template() == fixtures::read("prompts/universal_prm.txt"),
           "universal PRM template bytes");
  c.expect(qwen_prm_template() == fixtures::read("prompts/qwen_prm.txt"), "qwen PRM template bytes");
  c.expect(EngineConfig{}.deepen_prompt == default_deepen_prompt(), "config default deepen prompt");
}

std::vector<oracle::Hit> as_hits(const std::vector<CueMatch>& ms) {
  std::vector<oracle::Hit> out;
  for (const auto& m : ms) out.push_back({m.match_start, m.match_end, m.cue.phrase});
  return out;
}

void scanner_equivalence(Check& c) {
  std::mt19937_64 rng(20250101);
  const auto& table = default_cue_table();
  const auto phrases = oracle::phrases_of(table);
  for (int t = 0; t < 1000; ++t) {
    const auto text = oracle::planted_text(rng, phrases, rng() % 8);
    const auto expected = oracle::naive_scan(text, phrases);
    for (int k = 0; k < 10; ++k) {
      StreamScanner sc(table);
      std::vector<CueMatch> got;
      std::size_t prev = 0;
      for (auto cut : oracle::random_cuts(rng, text.size())) {
        auto ms = sc.feed(std::string_view(text).substr(prev, cut - prev));
        got.insert(got.end(), ms.begin(), ms.end());
        prev = cut;
      }
      auto tail = sc.finish();
      got.insert(got.end(), tail.begin(), tail.end());
      c.expect(as_hits(got) == expected,
               "text " + std::to_string(t) + " chunking " + std::to_string(k) + " mismatched");
    }
  }
}

void uf_oracle(Check& c) {
  std::mt19937_64 rng(4242);
  const auto& cues = default_cue_table();
  const auto phrases = oracle::phrases_of(cues);
  for (int t = 0; t < 500; ++t) {
    // Half segmented from planted text, half with drawn lengths.
    ReasoningTrace trace;
    if (t % 2 == 0) {
      trace = segment_trace_for_metrics(oracle::planted_text(rng, phrases, rng() % 10), cues);
    } else {
      std::size_t off = 0;
      const std::size_t n = rng() % 40;
      for (std::size_t i = 0; i < n; ++i) {
        Thought th;
        th.index = i + 1;
        th.token_len = 1 + rng() % 2000;
        th.text = std::string(th.token_len * 4, 'x');
        th.start_offset = off;
        th.end_offset = off + th.text.size();
        off = th.end_offset;
        trace.full_text += th.text;
        trace.thoughts.push_back(std::move(th));
      }
    }
    std::size_t prev = 0;
    for (std::size_t L : {1ul, 50ul, 100ul, 200ul, 1000000ul}) {
      const auto r = underthinking_frequency(trace, L);
      c.expect(r.uf == oracle::uf_count(trace, L),
               "trace " + std::to_string(t) + " L=" + std::to_string(L));
      c.expect(r.uf >= prev, "monotonicity at trace " + std::to_string(t));
      prev = r.uf;
    }
  }
}

void scenario_suite(Check& c) {
  const auto all = scenarios::all();
  c.expect(all.size() >= 8, "fewer than eight scenarios");
  for (const auto& sc : all) {
    const auto o = scenarios::run(sc);
    c.expect(o.log == sc.golden, sc.name + ": event log differs");
    c.expect(o.result.interventions_used == sc.interventions, sc.name + ": intervention count");
    c.expect(o.result.status == sc.status, sc.name + ": status");
    if (sc.final_text) c.expect(o.result.final_text == *sc.final_text, sc.name + ": final text");
    if (sc.prm_calls) c.expect(o.prm_calls == *sc.prm_calls, sc.name + ": PRM call count");
  }
}

void prefix_integrity(Check& c) {
  for (const auto& sc : scenarios::all()) {
    const auto o = scenarios::run(sc);
    c.expect(o.audit.prefix_integrity && o.audit.no_lost_text, sc.name + ": " + o.audit.why);
  }
  // Randomized scripts on top of the fixed scenarios.
  std::mt19937_64 rng(555);
  const auto phrases = oracle::phrases_of(default_cue_table());
  for (int t = 0; t < 200; ++t) {
    EngineConfig cfg;
    cfg.prm_backoff_ms = 0;
    cfg.max_interventions = rng() % 5;
    cfg.mode = rng() % 4 == 0 ? Mode::AlwaysIntervene : Mode::SmartSwitch;
    cfg.max_output_tokens = 20 + rng() % 400;
    const std::string base = oracle::planted_text(rng, phrases, rng() % 5);
    const std::string deep = oracle::planted_text(rng, phrases, rng() % 3);
    auto llm = ScriptedLlm::from_json(scenarios::two_rules(base, deep, rng() % 2 ? "word" : "bytes"));
    scenarios::RecordingLlm rec(llm);
    auto prm = ScriptedPrm::constant(std::uniform_real_distribution<double>(0, 1)(rng));
    const auto r = run_generation("q", cfg, rec, prm, default_cue_table());
    const auto a = scenarios::audit(rec, r, "q", cfg.deepen_prompt);
    c.expect(a.prefix_integrity && a.no_lost_text, "random run " + std::to_string(t) + ": " + a.why);
    c.expect(r.interventions_used <= cfg.max_interventions, "budget exceeded");
  }
}

void score_mapping(Check& c) {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> v(1 + rng() % 30);
    for (auto& x : v) x = u(rng);
    for (auto s : oracle::kStrategies) {
      const double got = map_scores(v, s);
      const double want = oracle::mapped(v, s);
      c.expect(std::fabs(got - want) <= 1e-9,
               std::string(to_string(s)) + " off by " + std::to_string(got - want));
    }
  }
  c.expect(EngineConfig{}.mapping_strategy == MappingStrategy::Last, "default mapping is not last");
}

std::vector<std::string> texts(const std::vector<Process>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.text);
  return out;
}

void segmentation(Check& c) {
  std::mt19937_64 rng(500);
  const auto counter = default_token_counter();
  for (int t = 0; t < 500; ++t) {
    const auto text = oracle::random_corpus(rng, 1 + rng() % 12);
    const auto paras = oracle::paragraphs(text);
    const std::size_t threshold = 1 + rng() % 60;
    const std::string at = " on corpus " + std::to_string(t);

    const auto v3 = segment_single_v3(text);
    c.expect(texts(v3) == paras && oracle::reconstructs(text, v3), "v3" + at);
    const std::size_t g = 1 + rng() % 6;
    const auto v2 = segment_grouped_v2(text, g);
    c.expect(oracle::reconstructs(text, v2) && v2.size() == (paras.size() + g - 1) / g, "v2" + at);

    const auto v4 = segment_adaptive_v4(text, threshold);
    c.expect(oracle::reconstructs(text, v4), "v4 reconstruction" + at);
    if (counter(text) <= threshold || paras.size() <= 1) {
      c.expect(v4.size() == 1 && v4[0].text == text, "v4 whole thought" + at);
      continue;
    }
    std::vector<std::size_t> lens;
    for (const auto& p : paras) lens.push_back(counter(p));
    const auto groups = oracle::greedy_groups(lens, threshold);
    c.expect(v4.size() == groups.size(), "v4 group count" + at);
    for (std::size_t i = 0; i < std::min(v4.size(), groups.size()); ++i) {
      c.expect(oracle::paragraphs(v4[i].text).size() == groups[i].size(), "v4 grouping" + at);
      if (groups[i].size() > 1) c.expect(v4[i].token_len <= threshold, "v4 length bound" + at);
    }
  }

  // Worked examples.
  const std::string short_thought(600, 'a');
  const auto one = segment_adaptive_v4(short_thought, 200);
  c.expect(one.size() == 1 && one[0].token_len == 150, "150-token thought stays whole");
  c.expect(texts(segment_adaptive_v4("A\n\nB\n\nC", 1)) == std::vector<std::string>{"A", "B", "C"},
           "threshold one splits A/B/C");
  std::string five;
  for (int i = 0; i < 5; ++i) five += (i ? "\n\n" : "") + std::string(400, static_cast<char>('a' + i));
  const auto pairs = segment_adaptive_v4(five, 200);
  c.expect(pairs.size() == 3 && pairs[0].token_len == 200 && pairs[1].token_len == 200 &&
               pairs[2].token_len == 100,
           "five 100-token paragraphs merge into pairs");
}

void bench_determinism(Check& c) {
  const auto dataset = load_dataset(fixtures::path("bench/dataset.jsonl"));
  const auto script = json::parse(fixtures::read("bench/script.json"));
  EngineConfig cfg;
  cfg.samples_per_query = 2;
  cfg.prm_backoff_ms = 0;
  cfg.seed_base = 7;
  auto once = [&](std::size_t threads) {
    auto llm = ScriptedLlm::from_json(script);
    auto prm = ScriptedPrm::from_json(script["prm"]);
    EngineConfig run_cfg = cfg;
    run_cfg.parallelism = threads;
    return summary_json(run_benchmark(dataset, run_cfg, llm, prm, default_cue_table()), run_cfg)
               .dump(2) +
           "\n";
  };
  const auto first = once(1);
  c.expect(first == once(1), "two runs differ");
  c.expect(first == once(4), "thread count changes the summary");
  c.expect(first == fixtures::read("bench/golden_summary.json"), "summary differs from golden file");
  const auto summary = json::parse(first);
  c.expect(summary["run"]["pass_at_1"] == 1.0, "smartswitch pass@1");
  c.expect(std::fabs(summary["baseline"]["pass_at_1"].get<double>() - 2.0 / 3) < 1e-12,
           "vanilla pass@1");

  // Mixed-correctness fixture: (1/4 + 2/2 + 0/3) / 3.
  std::vector<BenchmarkRecord> recs;
  for (const auto& r : json::parse(fixtures::read("bench/mixed_records.json"))) {
    BenchmarkRecord rec{r["problem_id"], {}};
    for (std::size_t i = 0; i < r["correct"].size(); ++i) {
      SampleResult s;
      s.correct = r["correct"][i];
      s.tokens = r["tokens"][i];
      rec.samples.push_back(s);
    }
    recs.push_back(rec);
  }
  c.expect(std::fabs(pass_at_1(recs) - 1.25 / 3) < 1e-15, "mixed fixture pass@1");
}

int shell(const std::string& cmd, std::string& output) {
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) output.append(buf, n);
  const int status = pclose(p);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void end_to_end(Check& c) {
  const auto script = json::parse(fixtures::read("bench/script.json"));
  auto llm = ScriptedLlm::from_json(script);
  auto prm = ScriptedPrm::from_json(script["prm"]);
  MockBackendServer server(llm, prm);
  const int port = server.start();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  const fs::path out = fs::temp_directory_path() / ("smartswitch-acceptance-" + std::to_string(port));
  fs::remove_all(out);

  std::string output;
  const int rc = shell(std::string("'") + SMARTSWITCH_CLI +
                           "' generate --mode smartswitch --problem 'Compute 1+1.' --llm-endpoint " +
                           base + "/generate --prm-endpoint " + base + "/score --out '" +
                           out.string() + "'",
                       output);
  c.expect(rc == 0, "generate exited with " + std::to_string(rc) + ": " + output);
  c.expect(output.find("protocol") == std::string::npos, "protocol error reported");
  std::ifstream in(out / "trace.jsonl");
  std::string line;
  std::getline(in, line);
  try {
    const auto record = json::parse(line);
    const auto trace = trace_from_json(record);
    c.expect(!trace.thoughts.empty(), "trace has no thoughts");
    c.expect(record.at("status") == "finished", "status " + record.at("status").dump());
  } catch (const std::exception& e) {
    c.expect(false, std::string("malformed trace record: ") + e.what());
  }
  fs::remove_all(out);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"cue-table-fidelity", 1.0, cue_table_fidelity},
      {"streaming-scanner-equivalence", 30.0, scanner_equivalence},
      {"uf-oracle-equivalence", 10.0, uf_oracle},
      {"state-machine-scenarios", 10.0, scenario_suite},
      {"prefix-integrity-audit", 30.0, prefix_integrity},
      {"score-mapping", 10.0, score_mapping},
      {"segmentation-properties", 10.0, segmentation},
      {"bench-determinism", 30.0, bench_determinism},
      {"end-to-end-smoke", 30.0, end_to_end},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.ok() && s > cr.budget_s)
      c.failure = "took " + std::to_string(s) + " s, budget " + std::to_string(cr.budget_s) + " s";
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs/%.0fs", s, cr.budget_s);
    if (c.ok()) {
      std::cout << "PASS " << cr.name << " (" << c.checks << " checks, " << timing << ")\n";
    } else {
      ++failed;
      std::cout << "FAIL " << cr.name << " (" << timing << "): " << c.failure << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
