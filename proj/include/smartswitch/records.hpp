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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace smartswitch {

/// One benchmark problem.
struct ProblemRecord {
  std::string id;
  std::string problem;
  std::string answer;
  std::optional<int> level;
};

struct SampleResult {
  std::string final_text;
  std::optional<std::string> extracted_answer;
  bool correct = false;  // implies extracted_answer
  std::size_t tokens = 0;
  double wall_time = 0.0;  // seconds
  std::size_t interventions_used = 0;
  std::string status;
};

/// All samples drawn for one problem.
struct BenchmarkRecord {
  std::string problem_id;
  std::vector<SampleResult> samples;
};

}  // namespace smartswitch
