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

#include "smartswitch/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "smartswitch/errors.hpp"

namespace smartswitch {

double map_scores(std::span<const double> scores, MappingStrategy strategy) {
  if (scores.empty()) throw std::invalid_argument("map_scores needs at least one score");
  const auto n = scores.size();
  switch (strategy) {
    case MappingStrategy::Max:
      return *std::max_element(scores.begin(), scores.end());
    case MappingStrategy::Min:
      return *std::min_element(scores.begin(), scores.end());
    case MappingStrategy::Mean:
      return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(n);
    case MappingStrategy::Median: {
      std::vector<double> sorted(scores.begin(), scores.end());
      std::sort(sorted.begin(), sorted.end());
      return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    }
    case MappingStrategy::WeightedAverage: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(i + 1) * scores[i];
      return acc / (static_cast<double>(n) * static_cast<double>(n + 1) / 2.0);
    }
    case MappingStrategy::Last:
      break;
  }
  return scores.back();
}

PrmVerdict score_thought(std::string_view question, std::string_view prior_context,
                         std::span<const Process> processes, PrmClient& prm,
                         MappingStrategy strategy, const RetryPolicy& retry) {
  if (processes.empty()) throw std::invalid_argument("score_thought needs at least one process");

  PrmRequest request;
  request.question = std::string(question);
  for (const auto& p : split_paragraphs(prior_context))
    request.prior_steps.emplace_back(prior_context.substr(p.begin, p.end - p.begin));
  for (const auto& p : processes) request.steps.push_back(p.text);

  std::vector<double> raw;
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      raw = prm.score(request);
      break;
    } catch (const ScoringError&) {
      if (attempt >= retry.retries) throw;
      std::this_thread::sleep_for(retry.backoff * (attempt + 1));
    }
  }
  if (raw.size() != processes.size())
    throw ProtocolError("PRM returned " + std::to_string(raw.size()) + " scores for " +
                        std::to_string(processes.size()) + " processes");

  PrmVerdict verdict;
  verdict.strategy_used = strategy;
  verdict.process_scores.reserve(raw.size());
  for (double s : raw) {
    if (std::isnan(s)) throw ProtocolError("PRM score is NaN");
    verdict.process_scores.push_back(std::clamp(s, 0.0, 1.0));
  }
  verdict.mapped_score = map_scores(verdict.process_scores, strategy);
  return verdict;
}

}  // namespace smartswitch
