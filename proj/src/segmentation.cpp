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

#include "smartswitch/segmentation.hpp"

#include <stdexcept>

namespace smartswitch {

namespace {

void require_text(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("cannot segment empty text");
}

// Builds a process from paragraphs [first, last] inclusive.
Process span_process(std::string_view text, const std::vector<Paragraph>& paras, std::size_t first,
                     std::size_t last, std::size_t token_len, std::size_t ordinal) {
  const auto begin = paras[first].begin;
  const auto end = paras[last].end;
  return {std::string(text.substr(begin, end - begin)), token_len, ordinal, begin};
}

}  // namespace

std::vector<Paragraph> split_paragraphs(std::string_view text) {
  std::vector<Paragraph> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n' && i + 1 < text.size() && text[i + 1] == '\n') {
      std::size_t j = i;
      while (j < text.size() && text[j] == '\n') ++j;
      if (i > start) out.push_back({start, i});
      start = i = j;
    } else {
      ++i;
    }
  }
  if (text.size() > start) out.push_back({start, text.size()});
  return out;
}

std::vector<Process> segment_adaptive_v4(std::string_view text, std::size_t token_threshold,
                                         const TokenCounter& counter) {
  require_text(text);
  if (token_threshold == 0) throw std::invalid_argument("token threshold must be positive");

  const auto paras = split_paragraphs(text);
  const auto whole = counter(text);
  if (whole <= token_threshold || paras.size() <= 1) return {{std::string(text), whole, 0, 0}};

  std::vector<std::size_t> lens;
  lens.reserve(paras.size());
  for (const auto& p : paras) lens.push_back(counter(text.substr(p.begin, p.end - p.begin)));

  std::vector<Process> out;
  std::size_t first = 0;
  std::size_t running = lens[0];
  for (std::size_t i = 1; i < paras.size(); ++i) {
    if (running + lens[i] <= token_threshold) {
      running += lens[i];
      continue;
    }
    out.push_back(span_process(text, paras, first, i - 1, running, out.size()));
    first = i;
    running = lens[i];
  }
  out.push_back(span_process(text, paras, first, paras.size() - 1, running, out.size()));
  return out;
}

std::vector<Process> segment_grouped_v2(std::string_view text, std::size_t group_size,
                                        const TokenCounter& counter) {
  require_text(text);
  if (group_size == 0) throw std::invalid_argument("group size must be positive");
  const auto paras = split_paragraphs(text);
  if (paras.empty()) return {{std::string(text), counter(text), 0, 0}};

  std::vector<Process> out;
  for (std::size_t first = 0; first < paras.size(); first += group_size) {
    const auto last = std::min(first + group_size, paras.size()) - 1;
    std::size_t tokens = 0;
    for (std::size_t i = first; i <= last; ++i)
      tokens += counter(text.substr(paras[i].begin, paras[i].end - paras[i].begin));
    out.push_back(span_process(text, paras, first, last, tokens, out.size()));
  }
  return out;
}

std::vector<Process> segment_single_v3(std::string_view text, const TokenCounter& counter) {
  require_text(text);
  const auto paras = split_paragraphs(text);
  if (paras.empty()) return {{std::string(text), counter(text), 0, 0}};

  std::vector<Process> out;
  out.reserve(paras.size());
  for (std::size_t i = 0; i < paras.size(); ++i) {
    auto body = text.substr(paras[i].begin, paras[i].end - paras[i].begin);
    out.push_back({std::string(body), counter(body), i, paras[i].begin});
  }
  return out;
}

std::vector<Process> segment_thought(std::string_view text, const EngineConfig& config,
                                     const TokenCounter& counter) {
  switch (config.segmentation) {
    case SegmentationStrategy::Grouped:
      return segment_grouped_v2(text, config.group_size, counter);
    case SegmentationStrategy::Single:
      return segment_single_v3(text, counter);
    case SegmentationStrategy::Adaptive:
      break;
  }
  return segment_adaptive_v4(text, config.segment_token_threshold, counter);
}

}  // namespace smartswitch
