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

// Multitagger front end: prunes per-word supertag distributions with a
// probability threshold (gamma) and a per-word cap (alpha).

#ifndef CCGBEAM_MULTITAG_HPP_
#define CCGBEAM_MULTITAG_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ccgbeam {

struct TagEntry {
  std::string category;
  double log_prob = 0.0;  // natural log

  friend bool operator==(const TagEntry&, const TagEntry&) = default;
};

struct TagDistribution {
  int index = 0;
  std::string word;
  std::vector<TagEntry> entries;  // descending log-probability

  // Throws FormatError unless entries are non-empty, probabilities lie in
  // (0, 1], are sorted descending and sum to at most 1 + 1e-6.
  void Validate() const;
};

using TaggedSentence = std::vector<TagDistribution>;

enum class ThresholdMode { kAbsolute, kRelativeToBest };

struct PruneConfig {
  double gamma = 0.0005;
  int alpha = 10;
  ThresholdMode mode = ThresholdMode::kAbsolute;

  void Validate() const;  // throws std::invalid_argument
};

// Keeps entries with p >= gamma (absolute) or p >= gamma * p_max (relative),
// then truncates to the top alpha. The best entry is always kept.
std::vector<TagEntry> Prune(const TagDistribution& dist, const PruneConfig& cfg);

struct MultitagStats {
  double ambiguity = 0.0;  // mean pruned-set size
  double accuracy = 0.0;   // fraction of tokens whose pruned set contains gold
  long tokens = 0;
};

// Throws AlignmentError when the token counts differ.
MultitagStats AmbiguityAndAccuracy(const std::vector<TaggedSentence>& corpus,
                                   const std::vector<std::vector<std::string>>& gold,
                                   const PruneConfig& cfg);

// Tag-distribution file: sentences separated by blank lines, one token per
// line as "index TAB word TAB cat:logprob SPACE cat:logprob ...".
std::vector<TaggedSentence> ParseTagFile(std::string_view text);
std::vector<TaggedSentence> LoadTagFile(const std::string& path);
std::string FormatTagFile(const std::vector<TaggedSentence>& corpus);

}  // namespace ccgbeam

#endif  // CCGBEAM_MULTITAG_HPP_
