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

#include "ccgbeam/chart.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ccgbeam/errors.hpp"

namespace ccgbeam {

namespace {

int Sign(int c) { return (c > 0) - (c < 0); }

template <typename T>
int Three(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

void CollectInto(const ChartItem& item, std::vector<Dependency>& out) {
  out.insert(out.end(), item.filled.begin(), item.filled.end());
  if (item.left != nullptr) CollectInto(*item.left, out);
  if (item.right != nullptr) CollectInto(*item.right, out);
}

double ChildScores(const ChartItem& item) {
  return (item.left ? item.left->score : 0.0) + (item.right ? item.right->score : 0.0);
}

ParseResult Assemble(const std::vector<const ChartItem*>& items, bool skimmed) {
  ParseResult result;
  result.skimmed = skimmed;
  for (const ChartItem* item : items) {
    result.trees.push_back(ToTree(*item));
    result.fragment_scores.push_back(item->score);
    result.score += item->score;
    CollectInto(*item, result.deps);
    for (const Tree* leaf : result.trees.back().Leaves()) {
      result.categories.push_back(leaf->category.str());
    }
  }
  std::sort(result.deps.begin(), result.deps.end());
  return result;
}

}  // namespace

std::string ChartItem::Label() const {
  if (chain.empty()) return base.str();
  std::vector<std::string> parts{base.str()};
  for (const auto& step : chain) parts.push_back(step.category.str());
  return EncodeChain(parts);
}

int CompareStructure(const ChartItem& a, const ChartItem& b) {
  if (int c = Sign(a.category().str().compare(b.category().str()))) return c;
  if (int c = Three(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  if (int c = Three(a.chain.size(), b.chain.size())) return c;
  for (size_t i = 0; i < a.chain.size(); ++i) {
    if (int c = Sign(a.chain[i].category.str().compare(b.chain[i].category.str()))) return c;
    if (int c = Three(static_cast<int>(a.chain[i].kind), static_cast<int>(b.chain[i].kind))) {
      return c;
    }
  }
  if (int c = Sign(a.base.str().compare(b.base.str()))) return c;
  const int a_split = a.left ? a.left->end : -1;
  const int b_split = b.left ? b.left->end : -1;
  if (int c = Three(a_split, b_split)) return c;
  if (a.left && b.left) {
    if (int c = CompareStructure(*a.left, *b.left)) return c;
    if (int c = CompareStructure(*a.right, *b.right)) return c;
  }
  return Sign(a.word.compare(b.word));
}

bool ItemBefore(const ChartItem& a, const ChartItem& b) {
  if (a.score != b.score) return a.score > b.score;
  return CompareStructure(a, b) < 0;
}

ItemBuilder::ItemBuilder(const Grammar& grammar, const LabelScorer& scorer,
                         const ScoreConfig& cfg, int unary_depth)
    : grammar_(grammar), scorer_(scorer), cfg_(cfg), unary_depth_(unary_depth) {}

double ItemBuilder::Local(const ChartItem& item) const {
  double local = 0.0;
  if (item.is_leaf()) {
    local += cfg_.w_st * item.log_prob;
    if (item.chain.empty()) return local;
  }
  return local + cfg_.w_sp * scorer_.Score(item.start, item.end, item.Label(), cfg_);
}

ChartItem ItemBuilder::Leaf(int index, const std::string& word, const Category& cat,
                            double log_prob) const {
  ChartItem item;
  item.start = index;
  item.end = index + 1;
  item.base = cat;
  item.kind = RuleKind::kLexical;
  item.word = word;
  item.log_prob = log_prob;
  item.heads = LexicalHeads(index, grammar_.markedup.Resolve(cat));
  item.local = Local(item);
  item.score = item.local;
  return item;
}

std::vector<ChartItem> ItemBuilder::Combine(const ChartItem& left, const ChartItem& right) const {
  std::vector<ChartItem> out;
  for (const auto& r : ApplyBinary(left.category(), right.category(), grammar_.tables)) {
    ChartItem item;
    item.start = left.start;
    item.end = right.end;
    item.base = r.result;
    item.kind = r.kind;
    item.left = &left;
    item.right = &right;
    Propagation p = PropagateBinary(left.category(), left.heads, right.category(), right.heads,
                                    r.result, r.kind);
    item.heads = std::move(p.state);
    item.filled = std::move(p.filled);
    item.local = Local(item);
    item.score = ChildScores(item) + item.local;
    out.push_back(std::move(item));
  }
  return out;
}

void ItemBuilder::Extend(const ChartItem& item, std::vector<ChartItem>& out) const {
  if (static_cast<int>(item.chain.size()) >= unary_depth_) return;
  for (const auto& u : ApplyUnary(item.category(), grammar_.tables)) {
    const bool cycle = u.result == item.base ||
                       std::any_of(item.chain.begin(), item.chain.end(),
                                   [&](const ChainStep& s) { return s.category == u.result; });
    if (cycle) continue;
    ChartItem next = item;
    Propagation p = PropagateUnary(item.category(), item.heads, u.result, u.kind);
    next.chain.push_back({u.result, u.kind});
    next.heads = std::move(p.state);
    next.filled.insert(next.filled.end(), p.filled.begin(), p.filled.end());
    next.local = Local(next);
    next.score = ChildScores(next) + next.local;
    out.push_back(next);
    Extend(next, out);
  }
}

std::vector<ChartItem> ItemBuilder::Close(const ChartItem& item) const {
  std::vector<ChartItem> out;
  Extend(item, out);
  return out;
}

Chart::Chart(int length)
    : length_(length), cells_(static_cast<size_t>(length) * static_cast<size_t>(length + 1)) {}

const std::vector<const ChartItem*>& Chart::cell(int start, int end) const {
  return cells_.at(static_cast<size_t>(start) * static_cast<size_t>(length_ + 1) + end);
}

std::vector<const ChartItem*>& Chart::cell(int start, int end) {
  return cells_.at(static_cast<size_t>(start) * static_cast<size_t>(length_ + 1) + end);
}

const ChartItem* Chart::Store(ChartItem item) {
  arena_.push_back(std::move(item));
  return &arena_.back();
}

void DecodeConfig::Validate() const {
  if (beam < 1) throw std::invalid_argument("beam width must be at least 1");
  if (max_items < 1) throw std::invalid_argument("max chart items must be positive");
  if (unary_depth < 0) throw std::invalid_argument("unary depth must be non-negative");
}

ParseResult Decode(const std::vector<std::string>& words,
                   const std::vector<std::vector<TagEntry>>& tags, const Grammar& grammar,
                   const LabelScorer& scorer, const DecodeConfig& cfg,
                   const ScoreConfig& score_cfg) {
  const int n = static_cast<int>(words.size());
  if (n == 0) throw FormatError("empty sentence");
  if (tags.size() != words.size()) throw AlignmentError("tag sets do not match the tokens");
  const ItemBuilder builder(grammar, scorer, score_cfg, cfg.unary_depth);
  Chart chart(n);
  std::map<std::string, Category> parsed;
  long generated = 0;
  bool limit_hit = false;

  for (int len = 1; len <= n && !limit_hit; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      const int j = i + len;
      std::vector<ChartItem> cands;
      if (len == 1) {
        if (tags[i].empty()) throw FormatError("token " + std::to_string(i) + " has no categories");
        for (const auto& tag : tags[i]) {
          auto it = parsed.find(tag.category);
          if (it == parsed.end()) {
            it = parsed.emplace(tag.category, ParseCategory(tag.category, grammar.tables.registry))
                     .first;
          }
          cands.push_back(builder.Leaf(i, words[i], it->second, tag.log_prob));
        }
      } else {
        for (int k = i + 1; k < j; ++k) {
          for (const ChartItem* l : chart.cell(i, k)) {
            for (const ChartItem* r : chart.cell(k, j)) {
              auto made = builder.Combine(*l, *r);
              std::move(made.begin(), made.end(), std::back_inserter(cands));
            }
          }
        }
      }
      const size_t bases = cands.size();
      for (size_t c = 0; c < bases; ++c) {
        auto closed = builder.Close(cands[c]);
        std::move(closed.begin(), closed.end(), std::back_inserter(cands));
      }
      generated += static_cast<long>(cands.size());

      std::vector<size_t> order(cands.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](size_t a, size_t b) { return ItemBefore(cands[a], cands[b]); });
      const size_t keep = std::min(order.size(), static_cast<size_t>(cfg.beam));
      auto& cell = chart.cell(i, j);
      for (size_t c = 0; c < keep; ++c) cell.push_back(chart.Store(std::move(cands[order[c]])));
    }
    if (generated > cfg.max_items) limit_hit = true;
  }

  ParseResult result;
  if (!limit_hit) {
    for (const ChartItem* item : chart.cell(0, n)) {
      if (cfg.any_root || grammar.tables.roots.count(item->category().str()) > 0) {
        result = Assemble({item}, false);
        break;
      }
    }
  }
  if (result.trees.empty()) result = Assemble(Skim(chart), true);
  result.limit_hit = limit_hit;
  result.items = generated;
  return result;
}

std::vector<const ChartItem*> Skim(const Chart& chart) {
  const int n = chart.length();
  struct Best {
    bool reached = false;
    int fragments = 0;
    double score = 0.0;
    int from = -1;
  };
  std::vector<Best> best(n + 1);
  best[0].reached = true;
  for (int j = 1; j <= n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (!best[i].reached || chart.cell(i, j).empty()) continue;
      const int frags = best[i].fragments + 1;
      const double score = best[i].score + chart.cell(i, j).front()->score;
      Best& b = best[j];
      if (!b.reached || frags < b.fragments || (frags == b.fragments && score > b.score)) {
        b = {true, frags, score, i};
      }
    }
  }
  std::vector<const ChartItem*> out;
  if (!best[n].reached) return out;
  for (int j = n; j > 0; j = best[j].from) out.push_back(chart.cell(best[j].from, j).front());
  std::reverse(out.begin(), out.end());
  return out;
}

Tree ToTree(const ChartItem& item) {
  Tree t;
  t.category = item.base;
  t.kind = item.kind;
  if (item.is_leaf()) {
    t.word = item.word;
    t.index = item.start;
  } else {
    t.children.push_back(ToTree(*item.left));
    t.children.push_back(ToTree(*item.right));
  }
  for (const auto& step : item.chain) {
    Tree up;
    up.category = step.category;
    up.kind = step.kind;
    up.children.push_back(std::move(t));
    t = std::move(up);
  }
  return t;
}

std::vector<Dependency> CollectDependencies(const ChartItem& item) {
  std::vector<Dependency> deps;
  CollectInto(item, deps);
  std::sort(deps.begin(), deps.end());
  return deps;
}

namespace {

void ValidateNode(const Tree& t, const GrammarTables& tables, std::vector<std::string>& errors) {
  for (const auto& c : t.children) ValidateNode(c, tables, errors);
  const std::string where = t.category.str() + " over [" + std::to_string(t.start()) + "," +
                            std::to_string(t.end()) + ")";
  if (t.is_leaf()) {
    if (t.kind != RuleKind::kLexical) errors.push_back(where + ": leaf with a rule kind");
    return;
  }
  bool ok = false;
  if (t.children.size() == 1) {
    for (const auto& u : ApplyUnary(t.children[0].category, tables)) {
      ok = ok || (u.kind == t.kind && u.result == t.category);
    }
  } else if (t.children.size() == 2) {
    for (const auto& b : ApplyBinary(t.children[0].category, t.children[1].category, tables)) {
      ok = ok || (b.kind == t.kind && b.result == t.category);
    }
  }
  if (!ok) errors.push_back(where + ": " + std::string(RuleKindName(t.kind)) + " not licensed");
}

}  // namespace

std::vector<std::string> ValidateDerivation(const Tree& tree, const GrammarTables& tables) {
  std::vector<std::string> errors;
  ValidateNode(tree, tables, errors);
  return errors;
}

}  // namespace ccgbeam
