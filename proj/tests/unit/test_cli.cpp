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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "../support/fixtures.hpp"
#include "smartswitch/smartswitch.hpp"

#ifndef SMARTSWITCH_CLI
#error "SMARTSWITCH_CLI must point at the smartswitch binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr, interleaved
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("'") + SMARTSWITCH_CLI + "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("smartswitch-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path write(const std::string& name, const std::string& body) const {
    std::ofstream(path / name, std::ios::binary) << body;
    return path / name;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

const std::string kScript = R"({"rules": [
  {"prefix_suffix_match": "Continue exploring this direction thoroughly.", "emit": " Y works out. \\boxed{2}"},
  {"prefix_suffix_match": "", "emit": "Use inequality X.\n\nAlternatively, try Y. \\boxed{3}"}],
 "prm": {"default": 0.9}})";

}  // namespace

TEST_CASE("generate in vanilla mode prints the scripted text") {
  TempDir t;
  const auto script = t.write("s.json", kScript);
  const auto r = cli("generate --problem 'Q?' --mode vanilla --script " + q(script) + " --out " +
                     q(t.path / "o"));
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("Use inequality X.\n\nAlternatively, try Y. \\boxed{3}\n"));
  CHECK(count(r.out, "Intervened") == 0);
  CHECK(r.out.find("--- status: finished interventions=0") != std::string::npos);
}

TEST_CASE("generate in smartswitch mode intervenes once and writes outputs") {
  TempDir t;
  const auto script = t.write("s.json", kScript);
  const auto r = cli("generate --problem 'Q?' --script " + q(script) + " --out " + q(t.path / "o"));
  CHECK(r.code == 0);
  CHECK(count(r.out, "\nIntervened [19,34)") == 1);
  CHECK(r.out.find("Y works out.") != std::string::npos);

  const auto config = json::parse(slurp(t.path / "o" / "config.json"));
  CHECK(config["tau_score"] == 0.7);
  CHECK(config["max_interventions"] == 3);
  const auto record = json::parse(slurp(t.path / "o" / "trace.jsonl"));
  CHECK(record["status"] == "finished");
  CHECK(record["interventions_used"] == 1);
  CHECK(record["events"].size() == 5);
}

TEST_CASE("generate echoes the effective config") {
  TempDir t;
  const auto script = t.write("s.json", kScript);
  const auto cfg = t.write("c.json", R"({"tau_score": 0.5, "max_interventions": 1})");
  const auto r = cli("generate --problem 'Q?' --config " + q(cfg) + " --tau 0.8 --script " +
                     q(script) + " --out " + q(t.path / "o"));
  CHECK(r.code == 0);
  const auto config = json::parse(slurp(t.path / "o" / "config.json"));
  CHECK(config["tau_score"] == 0.8);
  CHECK(config["max_interventions"] == 1);
}

TEST_CASE("generate usage errors") {
  CHECK(cli("generate --mode vanilla").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("generate --problem x --tau 1.5 --mode vanilla --llm-endpoint http://127.0.0.1:9").code == 2);
  CHECK(cli("generate --problem x --mode nonsense").code == 2);
  const auto bad = cli("generate --problem x --llm-endpoint nohost");
  CHECK(bad.code == 2);
}

TEST_CASE("generate against an unreachable backend fails with a diagnostic") {
  TempDir t;
  const auto r = cli("generate --problem x --mode vanilla --llm-endpoint http://127.0.0.1:9 --out " +
                     q(t.path / "o"));
  CHECK(r.code == 1);
  CHECK(r.out.find("generation failed") != std::string::npos);
}

TEST_CASE("bench from a manifest") {
  TempDir t;
  const auto r = cli("bench --manifest " + q(fixtures::path("bench/manifest.json")) + " --out " +
                     q(t.path / "a"));
  REQUIRE(r.code == 0);
  const auto summary = json::parse(slurp(t.path / "a" / "summary.json"));
  const double pass = summary["run"]["pass_at_1"].get<double>();
  std::istringstream lines(r.out);
  std::string line;
  bool seen = false;
  while (std::getline(lines, line)) {
    if (!line.starts_with("pass@1")) continue;
    std::istringstream cols(line);
    std::string name, vanilla, run;
    cols >> name >> vanilla >> run;
    CHECK(std::stod(run) == doctest::Approx(pass));
    CHECK(std::stod(vanilla) == doctest::Approx(summary["baseline"]["pass_at_1"].get<double>()));
    seen = true;
  }
  CHECK(seen);
  CHECK(fs::exists(t.path / "a" / "comparison.csv"));

  const auto again = cli("bench --manifest " + q(fixtures::path("bench/manifest.json")) +
                         " --parallelism 3 --out " + q(t.path / "b"));
  REQUIRE(again.code == 0);
  CHECK(slurp(t.path / "a" / "summary.json") == slurp(t.path / "b" / "summary.json"));
}

TEST_CASE("bench rejects a malformed dataset") {
  TempDir t;
  const auto r = cli("bench --manifest " + q(fixtures::path("bench/manifest.json")) +
                     " --dataset " + q(fixtures::path("bench/bad_dataset.jsonl")) + " --out " +
                     q(t.path / "a"));
  CHECK(r.code == 2);
  CHECK(r.out.find("line 2") != std::string::npos);
  CHECK_FALSE(fs::exists(t.path / "a" / "summary.json"));
}

TEST_CASE("bench rejects unknown manifest keys") {
  TempDir t;
  const auto m = t.write("m.json", R"({"datset": "x.jsonl"})");
  const auto r = cli("bench --manifest " + q(m));
  CHECK(r.code == 2);
  CHECK(r.out.find("datset") != std::string::npos);
}

TEST_CASE("analyze over a trace file") {
  TempDir t;
  std::string body;
  for (int i = 0; i < 4; ++i) {
    std::string text = "Start " + std::string(static_cast<std::size_t>(40 * (i + 1)), 'x');
    text += " Alternatively, " + std::string(static_cast<std::size_t>(300 * i + 20), 'y');
    text += " Wait, alternatively, " + std::string(120, 'z');
    body += json{{"full_text", text}, {"correct", i % 2 == 0}, {"tokens", 100 * (i + 1)}}.dump() + "\n";
  }
  const auto traces = t.write("traces.jsonl", body);
  const auto r = cli("analyze " + q(traces) + " --L 50,100,200 --out " + q(t.path / "m"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(slurp(t.path / "m" / "metrics.json"));
  const auto& curve = j["uf_curve"];
  REQUIRE(curve.size() == 3);
  CHECK(curve[0]["L"] == 50);
  CHECK(curve[0]["mean_uf"].get<double>() <= curve[1]["mean_uf"].get<double>());
  CHECK(curve[1]["mean_uf"].get<double>() <= curve[2]["mean_uf"].get<double>());
  CHECK(fs::exists(t.path / "m" / "metrics.csv"));

  const auto cfg = t.write("a.json", R"({"L": [10, 20]})");
  const auto viaconfig = cli("analyze " + q(traces) + " --config " + q(cfg));
  REQUIRE(viaconfig.code == 0);
  const auto k = json::parse(viaconfig.out);
  REQUIRE(k["uf_curve"].size() == 2);
  CHECK(k["uf_curve"][1]["L"] == 20);
}

TEST_CASE("analyze input handling") {
  TempDir t;
  const auto empty = t.write("empty.jsonl", "");
  const auto one = t.write("one.jsonl", json{{"full_text", "A. Alternatively, B."}}.dump() + "\n");
  const auto r = cli("analyze " + q(empty) + " " + q(one));
  CHECK(r.code == 0);
  CHECK(r.out.find("warning") != std::string::npos);
  CHECK(cli("analyze").code == 2);
  CHECK(cli("analyze " + q(empty)).code == 2);
  const auto bad = t.write("bad.jsonl", "{}\nnot json\n");
  const auto b = cli("analyze " + q(bad));
  CHECK(b.code == 2);
  CHECK(b.out.find(":1:") != std::string::npos);
}

TEST_CASE("serve-mock usage") {
  CHECK(cli("serve-mock").code == 2);
  TempDir t;
  const auto cfg = t.write("c.json", R"({"colour": 1})");
  CHECK(cli("serve-mock --config " + q(cfg)).code == 2);
}
