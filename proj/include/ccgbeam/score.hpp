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

// Additive derivation scores: supertag log-probabilities at the leaves plus a
// span score for the label of every span node. A span node is a binary node
// or leaf together with the unary chain above it; a chain is scored as one
// label, its categories bottom to top joined by '|'. Leaves without a chain
// take no span score.

#ifndef CCGBEAM_SCORE_HPP_
#define CCGBEAM_SCORE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccgbeam/corpus.hpp"
#include "ccgbeam/grammar.hpp"

namespace ccgbeam {

struct ScoreConfig {
  double w_st = 1.0;
  double w_sp = 1.0;
  double missing = -1e4;  // score of a label with no entry

  void Validate() const;  // throws std::invalid_argument on non-finite values
};

inline constexpr char kChainSeparator = '|';

std::string EncodeChain(const std::vector<std::string>& categories);
std::vector<std::string> DecodeChain(std::string_view label);

class LabelScorer {
 public:
  virtual ~LabelScorer() = default;
  virtual std::optional<double> Lookup(int start, int end, const std::string& label) const = 0;

  double Score(int start, int end, const std::string& label, const ScoreConfig& cfg) const {
    return Lookup(start, end, label).value_or(cfg.missing);
  }
};

class ScoreChart : public LabelScorer {
 public:
  ScoreChart() = default;
  explicit ScoreChart(int length) : length_(length) {}

  int length() const { return length_; }
  // Throws FormatError on bad bounds or a duplicate (span, label).
  void Add(int start, int end, const std::string& label, double score);
  std::optional<double> Lookup(int start, int end, const std::string& label) const override;
  const std::map<std::pair<int, int>, std::map<std::string, double>>& entries() const {
    return entries_;
  }

 private:
  int length_ = 0;
  std::map<std::pair<int, int>, std::map<std::string, double>> entries_;
};

// Score-chart file: per sentence a header "n LENGTH" followed by lines
// "start end label score"; sentences separated by blank lines.
std::vector<ScoreChart> ParseScoreCharts(std::string_view text);
std::vector<ScoreChart> LoadScoreCharts(const std::string& path);
std::string FormatScoreCharts(const std::vector<ScoreChart>& charts);

// Span-independent log relative frequency of a category as a rule result or
// unary target. A chain label is scored by its top category.
class FrequencyScorer : public LabelScorer {
 public:
  explicit FrequencyScorer(const GrammarTables& tables);
  std::optional<double> Lookup(int start, int end, const std::string& label) const override;

 private:
  std::map<std::string, long> counts_;
  long total_ = 0;
};

// Label of the span node topped by `top`: its category, or the chain from
// the binary node or leaf below it when `top` is a unary node.
std::string SpanLabel(const Tree& top);

// Scores a whole derivation from scratch. `leaf_log_probs[i]` is the
// supertag log-probability of token i's category.
double FlatScore(const Tree& tree, const std::vector<double>& leaf_log_probs,
                 const LabelScorer& scorer, const ScoreConfig& cfg);

}  // namespace ccgbeam

#endif  // CCGBEAM_SCORE_HPP_
