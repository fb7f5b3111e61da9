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

// Derivation trees, the bracketed treebank format, grammar extraction and
// gold oracle inputs.
//
// Tree syntax, one tree per line, optionally preceded by "# id: NAME":
//   (<T cat kind> child [child])
//   (<L cat word index>)

#ifndef CCGBEAM_CORPUS_HPP_
#define CCGBEAM_CORPUS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ccgbeam/category.hpp"
#include "ccgbeam/grammar.hpp"
#include "ccgbeam/markedup.hpp"

namespace ccgbeam {

struct Tree {
  Category category;
  RuleKind kind = RuleKind::kLexical;
  std::string word;  // leaves only
  int index = -1;    // leaves only
  std::vector<Tree> children;

  bool is_leaf() const { return children.empty(); }
  // Leaves in order.
  std::vector<const Tree*> Leaves() const;
  int start() const;  // index of the first leaf
  int end() const;    // one past the last leaf

  friend bool operator==(const Tree& a, const Tree& b);
};

std::string FormatTree(const Tree& tree);
// Throws FormatError (line number `line` is attached) on malformed input.
Tree ParseTree(std::string_view text, const AtomRegistry& registry = AtomRegistry::Default(),
               int line = 0);

struct TreebankEntry {
  std::string id;
  std::vector<std::string> tokens;
  Tree tree;
};

// Checks leaf numbering (0..n-1, left to right), arity against the rule kind
// and leaf kinds. Throws FormatError.
void ValidateTree(const Tree& tree);

// In lenient mode malformed entries are skipped and their messages (with
// line numbers) appended to `errors`; otherwise the first one is thrown.
std::vector<TreebankEntry> ReadTreebank(std::string_view text,
                                        const AtomRegistry& registry = AtomRegistry::Default(),
                                        bool lenient = false,
                                        std::vector<std::string>* errors = nullptr);
std::vector<TreebankEntry> LoadTreebank(const std::string& path,
                                        const AtomRegistry& registry = AtomRegistry::Default(),
                                        bool lenient = false,
                                        std::vector<std::string>* errors = nullptr);
std::string WriteTreebank(const std::vector<TreebankEntry>& entries);

struct ExtractOptions {
  long min_count = 1;  // lexical categories seen fewer times are dropped
  AtomRegistry registry = AtomRegistry::Default();
};

// Lexicon, rule instances with inferred kinds and counts, and root
// categories. Deterministic.
GrammarTables ExtractGrammar(const std::vector<TreebankEntry>& entries,
                             const ExtractOptions& options = {});

// Dependencies of a derivation, replayed through the engine's propagation
// and sorted.
std::vector<Dependency> TreeDependencies(const Tree& tree, const MarkedupTable& markedup);

// Empty when every rule application in `tree` is one the engine can
// reproduce (combinator instances licensed by their schema, type-raising of
// the right shape); otherwise a description of the first offending node.
std::string CheckExpressible(const Tree& tree);

struct OracleOutput {
  std::string tags;    // tag-distribution file, gold category at log-prob 0
  std::string spans;   // score-chart file, gold labels at score 0
  std::string deps;    // gold dependency file
  std::vector<std::string> skipped;  // "id: reason" for unusable entries
};

// Entries whose rule applications the engine cannot reproduce are skipped.
OracleOutput GoldOracle(const std::vector<TreebankEntry>& entries, const MarkedupTable& markedup);

}  // namespace ccgbeam

#endif  // CCGBEAM_CORPUS_HPP_
