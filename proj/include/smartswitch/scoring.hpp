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

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "smartswitch/config.hpp"
#include "smartswitch/prm_client.hpp"
#include "smartswitch/segmentation.hpp"

namespace smartswitch {

struct PrmVerdict {
  std::vector<double> process_scores;  // each in [0,1]
  double mapped_score = 0.0;
  MappingStrategy strategy_used = MappingStrategy::Last;
};

/// Collapses process scores into one thought score. WeightedAverage uses
/// weights proportional to position (1, 2, ..., n), so later processes count
/// more. Throws std::invalid_argument on an empty list.
double map_scores(std::span<const double> scores, MappingStrategy strategy);

/// Strict: the thought must exceed the threshold.
constexpr bool is_promising(double mapped_score, double tau_score) noexcept {
  return mapped_score > tau_score;
}

struct RetryPolicy {
  std::size_t retries = 2;
  std::chrono::milliseconds backoff{50};
};

/// Scores a thought's processes with one PRM call per attempt. The prior
/// context travels as paragraph steps ahead of the thought; only the scores
/// aligned with `processes` are mapped.
///
/// Throws ScoringError once all attempts fail on transport, ProtocolError on
/// a malformed response (not retried), std::invalid_argument if `processes`
/// is empty.
PrmVerdict score_thought(std::string_view question, std::string_view prior_context,
                         std::span<const Process> processes, PrmClient& prm,
                         MappingStrategy strategy = MappingStrategy::Last,
                         const RetryPolicy& retry = {});

}  // namespace smartswitch
