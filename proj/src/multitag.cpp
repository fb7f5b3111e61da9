// Copyright 2026 The ccgbeam Authors.
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

#include "ccgbeam/multitag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccgbeam/errors.hpp"
#include "text_io.hpp"

namespace ccgbeam {

void TagDistribution::Validate() const {
  if (entries.empty()) throw FormatError("token " + std::to_string(index) + " has no categories");
  double total = 0.0;
  for (size_t i = 0; i < entries.size(); ++i) {
    const double p = std::exp(entries[i].log_prob);
    if (!(p > 0.0) || entries[i].log_prob > 1e-12) {
      throw FormatError("token " + std::to_string(index) + ": probability outside (0,1]");
    }
    if (i > 0 && entries[i].log_prob > entries[i - 1].log_prob) {
      throw FormatError("token " + std::to_string(index) + ": entries not sorted descending");
    }
    total += p;
  }
  if (total > 1.0 + 1e-6) {
    throw FormatError("token " + std::to_string(index) + ": probabilities sum above 1");
  }
}

void PruneConfig::Validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0, 1]");
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
}

std::vector<TagEntry> Prune(const TagDistribution& dist, const PruneConfig& cfg) {
  std::vector<TagEntry> kept;
  if (dist.entries.empty()) return kept;
  const double log_gamma = std::log(cfg.gamma);
  const double cutoff = cfg.mode == ThresholdMode::kAbsolute
                            ? log_gamma
                            : log_gamma + dist.entries.front().log_prob;
  for (const auto& e : dist.entries) {
    if (static_cast<int>(kept.size()) >= cfg.alpha) break;
    if (kept.empty() || e.log_prob >= cutoff) {
      kept.push_back(e);
    } else {
      break;  // sorted: nothing further passes
    }
  }
  return kept;
}

MultitagStats AmbiguityAndAccuracy(const std::vector<TaggedSentence>& corpus,
                                   const std::vector<std::vector<std::string>>& gold,
                                   const PruneConfig& cfg) {
  if (corpus.size() != gold.size()) {
    throw AlignmentError("tag corpus has " + std::to_string(corpus.size()) +
                         " sentences, gold has " + std::to_string(gold.size()));
  }
  MultitagStats stats;
  long kept_total = 0, correct = 0;
  for (size_t s = 0; s < corpus.size(); ++s) {
    if (corpus[s].size() != gold[s].size()) {
      throw AlignmentError("sentence " + std::to_string(s) + ": token count mismatch");
    }
    for (size_t t = 0; t < corpus[s].size(); ++t) {
      auto kept = Prune(corpus[s][t], cfg);
      kept_total += static_cast<long>(kept.size());
      correct += std::any_of(kept.begin(), kept.end(),
                             [&](const TagEntry& e) { return e.category == gold[s][t]; });
      ++stats.tokens;
    }
  }
  if (stats.tokens > 0) {
    stats.ambiguity = static_cast<double>(kept_total) / static_cast<double>(stats.tokens);
    stats.accuracy = static_cast<double>(correct) / static_cast<double>(stats.tokens);
  }
  return stats;
}

std::vector<TaggedSentence> ParseTagFile(std::string_view text) {
  std::vector<TaggedSentence> corpus;
  TaggedSentence current;
  const auto lines = detail::Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    const std::string& line = lines[i];
    if (line.empty()) {
      if (!current.empty()) corpus.push_back(std::move(current));
      current.clear();
      continue;
    }
    auto fields = detail::Split(line, '\t');
    if (fields.size() != 3) throw FormatError("expected 3 tab-separated fields", line_no);
    TagDistribution dist;
    dist.index = static_cast<int>(detail::ParseLong(fields[0], line_no));
    if (dist.index != static_cast<int>(current.size())) {
      throw FormatError("token index " + fields[0] + " out of sequence", line_no);
    }
    dist.word = fields[1];
    for (const auto& item : detail::Tokens(fields[2])) {
      const size_t colon = item.rfind(':');
      if (colon == std::string::npos || colon == 0) {
        throw FormatError("expected cat:logprob, got '" + item + "'", line_no);
      }
      dist.entries.push_back(
          {item.substr(0, colon), detail::ParseDouble(item.substr(colon + 1), line_no)});
    }
    std::stable_sort(dist.entries.begin(), dist.entries.end(),
                     [](const TagEntry& a, const TagEntry& b) { return a.log_prob > b.log_prob; });
    try {
      dist.Validate();
    } catch (const FormatError& e) {
      throw FormatError(e.message(), line_no);
    }
    current.push_back(std::move(dist));
  }
  if (!current.empty()) corpus.push_back(std::move(current));
  return corpus;
}

std::vector<TaggedSentence> LoadTagFile(const std::string& path) {
  return ParseTagFile(detail::ReadFile(path));
}

std::string FormatTagFile(const std::vector<TaggedSentence>& corpus) {
  std::string out;
  for (size_t s = 0; s < corpus.size(); ++s) {
    if (s > 0) out += "\n";
    for (const auto& dist : corpus[s]) {
      out += std::to_string(dist.index) + "\t" + dist.word + "\t";
      for (size_t i = 0; i < dist.entries.size(); ++i) {
        if (i > 0) out += ' ';
        out += dist.entries[i].category + ":" + detail::FormatDouble(dist.entries[i].log_prob);
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace ccgbeam
