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


#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ccgbeam/chart.hpp"
#include "ccgbeam/corpus.hpp"
#include "ccgbeam/errors.hpp"
#include "harness.hpp"
#include "test_data.hpp"

using namespace ccgbeam;

namespace {

struct Mini {
  std::vector<TreebankEntry> entries;
  Grammar grammar;
};

const Mini& LoadMini() {
  static const Mini* mini = [] {
    auto* m = new Mini;
    m->entries = LoadTreebank(testdata::MiniTreebank());
    m->grammar.tables = ExtractGrammar(m->entries);
    m->grammar.markedup = MarkedupTable::Load(testdata::MiniMarkedup());
    return m;
  }();
  return *mini;
}

const TreebankEntry& Entry(const std::string& id) {
  for (const auto& e : LoadMini().entries) {
    if (e.id == id) return e;
  }
  throw std::runtime_error("no entry " + id);
}

std::vector<std::vector<TagEntry>> GoldTags(const Tree& tree) {
  std::vector<std::vector<TagEntry>> tags;
  for (const Tree* leaf : tree.Leaves()) tags.push_back({{leaf->category.str(), 0.0}});
  return tags;
}

bool HasKind(const Tree& t, RuleKind kind, const std::string& cat) {
  if (t.kind == kind && t.category.str() == cat) return true;
  for (const auto& c : t.children) {
    if (HasKind(c, kind, cat)) return true;
  }
  return false;
}

ChartItem Fragment(int start, int end, double score) {
  ChartItem item;
  item.start = start;
  item.end = end;
  item.base = ParseCategory("NP");
  item.score = score;
  return item;
}

}  // namespace

TEST_SUITE("chart") {

TEST_CASE("Fig. 1 with gold categories") {
  const auto& mini = LoadMini();
  const auto& fig1 = Entry("fig1");
  FrequencyScorer scorer(mini.grammar.tables);
  auto r = Decode(fig1.tokens, GoldTags(fig1.tree), mini.grammar, scorer, DecodeConfig{},
                  ScoreConfig{});
  REQUIRE_FALSE(r.skimmed);
  REQUIRE(r.trees.size() == 1);
  CHECK(r.trees[0].category.str() == "S[dcl]");
  CHECK(r.trees[0] == fig1.tree);
}

TEST_CASE("Fig. 2 with gold categories") {
  const auto& mini = LoadMini();
  const auto& fig2 = Entry("fig2");
  FrequencyScorer scorer(mini.grammar.tables);
  auto r = Decode(fig2.tokens, GoldTags(fig2.tree), mini.grammar, scorer, DecodeConfig{},
                  ScoreConfig{});
  REQUIRE_FALSE(r.skimmed);
  const Tree& t = r.trees.at(0);
  CHECK(t.category.str() == "NP");
  CHECK(HasKind(t, RuleKind::kTypeRaising, "S/(S\\NP)"));
  CHECK(HasKind(t, RuleKind::kForwardComposition, "S[dcl]/NP"));
  Dependency lr{5, "(S[dcl]\\NP)/NP", 2, 1, true};
  CHECK(std::count(r.deps.begin(), r.deps.end(), lr) == 1);
  CHECK(r.categories == std::vector<std::string>{"NP/N", "N", "(NP\\NP)/(S[dcl]/NP)", "NP/N",
                                                 "N", "(S[dcl]\\NP)/NP"});
}

TEST_CASE("oracle chart recovers the gold derivation among distractors") {
  const auto& mini = LoadMini();
  const auto& fig2 = Entry("fig2");
  auto oracle = GoldOracle({fig2}, mini.grammar.markedup);
  auto chart = ParseScoreCharts(oracle.spans).at(0);
  // Every lexicon category of each word, gold not necessarily first.
  std::vector<std::vector<TagEntry>> tags;
  for (const Tree* leaf : fig2.tree.Leaves()) {
    std::vector<TagEntry> set;
    const auto& cats = mini.grammar.tables.word_lexicon.at(leaf->word);
    const double lp = std::log(0.9 / static_cast<double>(cats.size()));
    for (const auto& [cat, count] : cats) set.push_back({cat, lp});
    tags.push_back(set);
  }
  ScoreConfig cfg;
  cfg.missing = -1e9;
  auto r = Decode(fig2.tokens, tags, mini.grammar, chart, DecodeConfig{}, cfg);
  REQUIRE_FALSE(r.skimmed);
  CHECK(r.trees[0] == fig2.tree);
}

TEST_CASE("skim examples") {
  const auto& mini = LoadMini();
  FrequencyScorer scorer(mini.grammar.tables);
  ItemBuilder builder(mini.grammar, scorer, ScoreConfig{}, 2);

  // Spanning item present: one fragment.
  Chart one(1);
  one.cell(0, 1).push_back(one.Store(builder.Leaf(0, "it", ParseCategory("NP"), 0.0)));
  auto frags = Skim(one);
  REQUIRE(frags.size() == 1);
  CHECK(frags[0] == one.cell(0, 1).front());

  // Two words, no rule: two one-word fragments.
  auto r = Decode({"it", "it"}, {{{"NP", 0.0}}, {{"NP", 0.0}}}, mini.grammar, scorer,
                  DecodeConfig{}, ScoreConfig{});
  CHECK(r.skimmed);
  REQUIRE(r.trees.size() == 2);
  CHECK(r.trees[0].start() == 0);
  CHECK(r.trees[1].start() == 1);
  CHECK(r.fragment_scores.size() == 2);
}

TEST_CASE("skim picks the higher-scoring split of equal length") {
  for (bool prefer_first : {true, false}) {
    Chart chart(4);
    for (int i = 0; i < 4; ++i) chart.cell(i, i + 1).push_back(chart.Store(Fragment(i, i + 1, -5)));
    // Hand sums: [0,3)+[3,4) = a; [0,2)+[2,4) = b.
    const double a = prefer_first ? -1.5 : -3.0;
    const double b = prefer_first ? -2.0 : -1.0;
    chart.cell(0, 3).push_back(chart.Store(Fragment(0, 3, a + 0.5)));
    chart.cell(3, 4).front() = chart.Store(Fragment(3, 4, -0.5));
    chart.cell(0, 2).push_back(chart.Store(Fragment(0, 2, b / 2)));
    chart.cell(2, 4).push_back(chart.Store(Fragment(2, 4, b / 2)));
    auto frags = Skim(chart);
    REQUIRE(frags.size() == 2);
    if (prefer_first) {
      CHECK(frags[0]->end == 3);
      CHECK(frags[1]->start == 3);
    } else {
      CHECK(frags[0]->end == 2);
      CHECK(frags[1]->start == 2);
    }
  }
}

TEST_CASE("skim prefers fewer fragments") {
  Chart chart(3);
  for (int i = 0; i < 3; ++i) chart.cell(i, i + 1).push_back(chart.Store(Fragment(i, i + 1, 0.0)));
  chart.cell(0, 2).push_back(chart.Store(Fragment(0, 2, -50.0)));
  auto frags = Skim(chart);
  REQUIRE(frags.size() == 2);
  CHECK(frags[0]->end == 2);
}

TEST_CASE("decode errors and limits") {
  const auto& mini = LoadMini();
  FrequencyScorer scorer(mini.grammar.tables);
  CHECK_THROWS_AS(Decode({}, {}, mini.grammar, scorer, DecodeConfig{}, ScoreConfig{}),
                  FormatError);
  CHECK_THROWS_AS(
      Decode({"it"}, {{}}, mini.grammar, scorer, DecodeConfig{}, ScoreConfig{}), FormatError);
  CHECK_THROWS_AS(
      Decode({"it"}, {{{"NP[zzz]", 0.0}}}, mini.grammar, scorer, DecodeConfig{}, ScoreConfig{}),
      FormatError);
  DecodeConfig bad;
  bad.beam = 0;
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);

  const auto& fig1 = Entry("fig1");
  DecodeConfig tiny;
  tiny.max_items = 3;
  auto r = Decode(fig1.tokens, GoldTags(fig1.tree), mini.grammar, scorer, tiny, ScoreConfig{});
  CHECK(r.limit_hit);
  CHECK(r.skimmed);
  CHECK(r.trees.size() >= 2);

  // A root outside roots.txt is accepted only with any_root.
  const std::vector<std::string> vp = {"bought", "shares"};
  std::vector<std::vector<TagEntry>> tags = {{{"(S[dcl]\\NP)/NP", 0.0}}, {{"N", 0.0}}};
  CHECK(Decode(vp, tags, mini.grammar, scorer, DecodeConfig{}, ScoreConfig{}).skimmed);
  DecodeConfig any;
  any.any_root = true;
  auto loose = Decode(vp, tags, mini.grammar, scorer, any, ScoreConfig{});
  CHECK_FALSE(loose.skimmed);
  CHECK(loose.trees[0].category.str() == "S[dcl]\\NP");
}

TEST_CASE("mini-treebank decodes are licensed, additive and deterministic") {
  const auto& mini = LoadMini();
  FrequencyScorer scorer(mini.grammar.tables);
  for (const auto& e : mini.entries) {
    CAPTURE(e.id);
    // All lexicon categories of each word, so the beam has choices.
    std::vector<std::vector<TagEntry>> tags;
    for (const auto& w : e.tokens) {
      std::vector<TagEntry> set;
      const auto& cats = mini.grammar.tables.word_lexicon.at(w);
      for (const auto& [cat, count] : cats) {
        set.push_back({cat, std::log(0.9 / static_cast<double>(cats.size()))});
      }
      tags.push_back(set);
    }
    DecodeConfig cfg;
    cfg.beam = 8;
    auto r = Decode(e.tokens, tags, mini.grammar, scorer, cfg, ScoreConfig{});
    auto again = Decode(e.tokens, tags, mini.grammar, scorer, cfg, ScoreConfig{});
    CHECK(r.trees == again.trees);
    CHECK(r.deps == again.deps);
    double total = 0.0;
    for (size_t f = 0; f < r.trees.size(); ++f) {
      const Tree& t = r.trees[f];
      CHECK(ValidateDerivation(t, mini.grammar.tables).empty());
      const double flat = FlatScore(t, harness::LeafLogProbs(t, tags), scorer, ScoreConfig{});
      CHECK(std::abs(flat - r.fragment_scores[f]) < 1e-9);
      total += flat;
    }
    CHECK(std::abs(total - r.score) < 1e-9);
  }
}

TEST_CASE("validator rejects unlicensed nodes") {
  const auto& mini = LoadMini();
  auto good = ParseTree("(<T PP fa> (<L PP/NP to 0>) (<L NP it 1>))");
  CHECK(ValidateDerivation(good, mini.grammar.tables).empty());
  auto wrong = ParseTree("(<T NP fa> (<L PP/NP to 0>) (<L NP it 1>))");
  CHECK_FALSE(ValidateDerivation(wrong, mini.grammar.tables).empty());
  auto unseen = ParseTree("(<T NP tc> (<L PP it 0>))");
  CHECK_FALSE(ValidateDerivation(unseen, mini.grammar.tables).empty());
}

TEST_CASE("beam 64 on a 5-word toy sentence matches enumeration") {
  Grammar toy = harness::ToyGrammar();
  harness::HashScorer scorer(3);
  ScoreConfig cfg;
  std::mt19937 rng(5);
  int tested = 0;
  while (tested < 10) {
    auto s = harness::GenerateToySentence(rng, 5);
    if (s.words.size() != 5) continue;
    ++tested;
    auto all = harness::EnumerateAllDerivations(s.words, s.tags, toy, scorer, cfg);
    REQUIRE_FALSE(all.derivations.empty());
    REQUIRE(all.max_cell <= 64);
    DecodeConfig dc;
    dc.beam = 64;
    auto r = Decode(s.words, s.tags, toy, scorer, dc, cfg);
    REQUIRE_FALSE(r.skimmed);
    double best = -1e300;
    for (const auto& d : all.derivations) best = std::max(best, d.score);
    CHECK(std::abs(r.score - best) < 1e-9);
  }
}

}  // TEST_SUITE
