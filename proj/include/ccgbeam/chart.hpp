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

// CKY chart decoding with a beam per cell.

#ifndef CCGBEAM_CHART_HPP_
#define CCGBEAM_CHART_HPP_

#include <deque>
#include <string>
#include <vector>

#include "ccgbeam/corpus.hpp"
#include "ccgbeam/grammar.hpp"
#include "ccgbeam/heads.hpp"
#include "ccgbeam/multitag.hpp"
#include "ccgbeam/score.hpp"

namespace ccgbeam {

struct ChainStep {
  Category category;
  RuleKind kind;
};

// A derivation of one span. Items with a unary chain share the children of
// the item they extend; the chain is scored as a single label.
struct ChartItem {
  int start = 0, end = 0;
  Category base;  // category of the leaf or binary node
  RuleKind kind = RuleKind::kLexical;
  std::vector<ChainStep> chain;  // unary steps above `base`, bottom to top
  const ChartItem* left = nullptr;
  const ChartItem* right = nullptr;
  std::string word;        // leaves
  double log_prob = 0.0;   // leaves
  double local = 0.0;      // this span node's contribution
  double score = 0.0;      // local plus children
  HeadState heads;
  std::vector<Dependency> filled;  // filled at this node or its chain

  const Category& category() const { return chain.empty() ? base : chain.back().category; }
  bool is_leaf() const { return left == nullptr; }
  // Category, or the chain label when the item tops a unary chain.
  std::string Label() const;
};

// Negative, zero or positive like strcmp over (category, kind, chain,
// left-child span end, left child, right child). Total on distinct items.
int CompareStructure(const ChartItem& a, const ChartItem& b);
// Beam order: higher score first, then CompareStructure.
bool ItemBefore(const ChartItem& a, const ChartItem& b);

// Builds items with the engine's rules, propagation and scoring. Shared by
// the decoder and the exhaustive enumerator.
class ItemBuilder {
 public:
  ItemBuilder(const Grammar& grammar, const LabelScorer& scorer, const ScoreConfig& cfg,
              int unary_depth);

  ChartItem Leaf(int index, const std::string& word, const Category& cat, double log_prob) const;
  // Binary items over (left, right); pointers to both are stored.
  std::vector<ChartItem> Combine(const ChartItem& left, const ChartItem& right) const;
  // Unary extensions of `item` with chains of length 1..unary_depth.
  std::vector<ChartItem> Close(const ChartItem& item) const;

 private:
  void Extend(const ChartItem& item, std::vector<ChartItem>& out) const;
  double Local(const ChartItem& item) const;

  const Grammar& grammar_;
  const LabelScorer& scorer_;
  ScoreConfig cfg_;
  int unary_depth_;
};

class Chart {
 public:
  explicit Chart(int length);

  int length() const { return length_; }
  const std::vector<const ChartItem*>& cell(int start, int end) const;
  std::vector<const ChartItem*>& cell(int start, int end);
  // Stores an item with a stable address; does not insert it in a cell.
  const ChartItem* Store(ChartItem item);

 private:
  int length_;
  std::deque<ChartItem> arena_;
  std::vector<std::vector<const ChartItem*>> cells_;
};

struct DecodeConfig {
  int beam = 32;
  long max_items = 1000000;  // generated items before the skimmer takes over
  int unary_depth = 2;
  bool any_root = false;     // otherwise the category must be in roots.txt

  void Validate() const;  // throws std::invalid_argument
};

struct ParseResult {
  bool skimmed = false;
  bool limit_hit = false;
  std::vector<Tree> trees;  // one tree, or the skimmed fragments in order
  std::vector<double> fragment_scores;
  double score = 0.0;
  std::vector<Dependency> deps;          // sorted
  std::vector<std::string> categories;   // lexical category per token
  long items = 0;                        // items generated
};

// Fills the chart bottom-up. Returns the best item satisfying the root
// policy in the top cell, or the skimmed analysis when there is none or the
// item limit was exceeded. Throws FormatError on an empty sentence, an empty
// tag set or a category the registry cannot parse.
ParseResult Decode(const std::vector<std::string>& words,
                   const std::vector<std::vector<TagEntry>>& tags, const Grammar& grammar,
                   const LabelScorer& scorer, const DecodeConfig& cfg,
                   const ScoreConfig& score_cfg);

// Fewest fragments covering [0, n) exactly, then highest total score; each
// fragment is the best item of its cell. Leaf cells are never empty once
// decoding has started, so a cover always exists.
std::vector<const ChartItem*> Skim(const Chart& chart);

Tree ToTree(const ChartItem& item);
std::vector<Dependency> CollectDependencies(const ChartItem& item);

// Post-hoc grammar check: every node must be licensed by ApplyBinary /
// ApplyUnary against `tables`. Returns one message per offending node.
std::vector<std::string> ValidateDerivation(const Tree& tree, const GrammarTables& tables);

}  // namespace ccgbeam

#endif  // CCGBEAM_CHART_HPP_
