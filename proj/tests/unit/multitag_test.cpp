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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ccgbeam/errors.hpp"
#include "ccgbeam/multitag.hpp"

using namespace ccgbeam;

namespace {

TagDistribution Dist(std::vector<std::pair<std::string, double>> probs) {
  TagDistribution d;
  d.word = "w";
  for (const auto& [cat, p] : probs) d.entries.push_back({cat, std::log(p)});
  d.Validate();
  return d;
}

std::vector<std::string> Cats(const std::vector<TagEntry>& entries) {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.category);
  return out;
}

PruneConfig Cfg(double gamma, int alpha, ThresholdMode mode = ThresholdMode::kAbsolute) {
  PruneConfig c;
  c.gamma = gamma;
  c.alpha = alpha;
  c.mode = mode;
  return c;
}

}  // namespace

TEST_SUITE("multitag") {

TEST_CASE("prune examples") {
  auto d = Dist({{"A", 0.90}, {"B", 0.0906}, {"C", 0.0004}});
  // Brute-force filter by the definition.
  std::vector<std::string> expected;
  for (const auto& e : d.entries) {
    if (std::exp(e.log_prob) >= 0.0005) expected.push_back(e.category);
  }
  CHECK(Cats(Prune(d, Cfg(0.0005, 10))) == expected);
  CHECK(expected == std::vector<std::string>{"A", "B"});

  auto single = Dist({{"A", 1.0}});
  for (double g : {0.0001, 0.5, 1.0}) {
    for (int a : {1, 5}) {
      for (auto mode : {ThresholdMode::kAbsolute, ThresholdMode::kRelativeToBest}) {
        CHECK(Cats(Prune(single, Cfg(g, a, mode))) == std::vector<std::string>{"A"});
      }
    }
  }
  auto three = Dist({{"A", 0.5}, {"B", 0.3}, {"C", 0.2}});
  CHECK(Cats(Prune(three, Cfg(0.001, 2))) == std::vector<std::string>{"A", "B"});
  // The argmax survives even an impossible threshold.
  CHECK(Cats(Prune(three, Cfg(1.0, 10))) == std::vector<std::string>{"A"});
  // Relative mode: 0.2 >= 0.5 * 0.5 fails, 0.3 passes.
  CHECK(Cats(Prune(three, Cfg(0.5, 10, ThresholdMode::kRelativeToBest))) ==
        std::vector<std::string>{"A", "B"});
}

TEST_CASE("configuration and distribution validation") {
  CHECK_THROWS_AS(Cfg(0.0, 3).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(Cfg(1.5, 3).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(Cfg(0.1, 0).Validate(), std::invalid_argument);
  CHECK_NOTHROW(Cfg(1.0, 1).Validate());

  TagDistribution d;
  CHECK_THROWS_AS(d.Validate(), FormatError);  // empty
  d.entries = {{"A", std::log(0.3)}, {"B", std::log(0.6)}};
  CHECK_THROWS_AS(d.Validate(), FormatError);  // unsorted
  d.entries = {{"A", std::log(0.7)}, {"B", std::log(0.6)}};
  CHECK_THROWS_AS(d.Validate(), FormatError);  // mass above 1
  d.entries = {{"A", 0.1}};
  CHECK_THROWS_AS(d.Validate(), FormatError);  // probability above 1
}

TEST_CASE("ambiguity and accuracy") {
  std::vector<TaggedSentence> corpus = {
      {Dist({{"A", 0.6}, {"B", 0.3}, {"C", 0.1}}), Dist({{"A", 0.95}, {"B", 0.04}, {"C", 0.01}})},
      {Dist({{"A", 0.7}, {"B", 0.2}})}};
  std::vector<std::vector<std::string>> gold = {{"B", "C"}, {"A"}};
  // By hand at gamma 0.05: sets {A,B,C}, {A}, {A,B}; gold found in the
  // first and third.
  auto stats = AmbiguityAndAccuracy(corpus, gold, Cfg(0.05, 10));
  CHECK(stats.tokens == 3);
  CHECK(stats.ambiguity == doctest::Approx(2.0));
  CHECK(stats.accuracy == doctest::Approx(2.0 / 3.0));

  stats = AmbiguityAndAccuracy(corpus, gold, Cfg(1.0, 10));
  CHECK(stats.ambiguity == 1.0);

  std::vector<std::vector<std::string>> argmax_gold = {{"A", "A"}, {"A"}};
  CHECK(AmbiguityAndAccuracy(corpus, argmax_gold, Cfg(0.3, 10)).accuracy == 1.0);

  CHECK_THROWS_AS(AmbiguityAndAccuracy(corpus, {{"A"}, {"A"}}, Cfg(0.1, 3)), AlignmentError);
  CHECK_THROWS_AS(AmbiguityAndAccuracy(corpus, {{"A", "B"}}, Cfg(0.1, 3)), AlignmentError);
}

TEST_CASE("pruned sets nest in gamma and respect the cap") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  const std::vector<double> grid = {1e-4, 5e-4, 1e-3, 0.005, 0.01, 0.05, 0.1, 0.3, 0.6, 1.0};
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + trial % 12;
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = std::pow(u(rng), 3));
    std::sort(w.rbegin(), w.rend());
    TagDistribution d;
    for (int i = 0; i < k; ++i) d.entries.push_back({"C" + std::to_string(i), std::log(w[i] / total)});
    const int alpha = 1 + trial % 7;
    for (auto mode : {ThresholdMode::kAbsolute, ThresholdMode::kRelativeToBest}) {
      std::vector<std::vector<std::string>> sets;
      for (double g : grid) {
        auto kept = Prune(d, Cfg(g, alpha, mode));
        CHECK(kept.size() >= 1);
        CHECK(static_cast<int>(kept.size()) <= alpha);
        CHECK(std::is_sorted(kept.begin(), kept.end(), [](const TagEntry& a, const TagEntry& b) {
          return a.log_prob > b.log_prob;
        }));
        sets.push_back(Cats(kept));
      }
      for (size_t i = 1; i < sets.size(); ++i) {
        auto a = sets[i - 1], b = sets[i];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
      }
    }
  }
}

TEST_CASE("tag file round trip and errors") {
  const std::string text =
      "0\tthe\tNP/N:0\n"
      "1\tfund\tN:-0.105360516 NP:-2.30258509\n"
      "\n"
      "0\tit\tNP:0\n";
  auto corpus = ParseTagFile(text);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].size() == 2);
  CHECK(corpus[0][1].entries[1].category == "NP");
  auto again = ParseTagFile(FormatTagFile(corpus));
  REQUIRE(again.size() == 2);
  for (size_t s = 0; s < corpus.size(); ++s) {
    for (size_t t = 0; t < corpus[s].size(); ++t) {
      CHECK(again[s][t].word == corpus[s][t].word);
      CHECK(again[s][t].entries == corpus[s][t].entries);
    }
  }
  // Entries are put in descending order; a category may contain ':'.
  auto sorted = ParseTagFile("0\tx\tNP:-1 N:-0.5\n");
  CHECK(sorted[0][0].entries[0].category == "N");
  CHECK(ParseTagFile("0\t:\tcolon:0\n")[0][0].entries[0].category == "colon");
  CHECK(ParseTagFile("").empty());

  auto line_of = [](const std::string& bad) {
    try {
      ParseTagFile(bad);
    } catch (const FormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("0\tx\tN:0\n2\ty\tN:0\n") == 2);          // index out of sequence
  CHECK(line_of("0\tx\tN:abc\n") == 1);                     // non-numeric
  CHECK(line_of("0\tx\tN:0.5\n") == 1);                     // probability above 1
  CHECK(line_of("0\tx\n") == 1);                            // no entries
  CHECK(line_of("0\tx\tN:-0.1 NP:-0.2\n") == 1);           // mass above 1
}

}  // TEST_SUITE
