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

// Combinatory rules and the treebank-derived rule tables that restrict them.

#ifndef CCGBEAM_GRAMMAR_HPP_
#define CCGBEAM_GRAMMAR_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccgbeam/category.hpp"
#include "ccgbeam/markedup.hpp"

namespace ccgbeam {

enum class RuleKind {
  kLexical,
  kForwardApplication,
  kBackwardApplication,
  kForwardComposition,
  kBackwardComposition,
  kBackwardCrossedComposition,
  kTreebankBinary,  // coordination, punctuation: instances looked up verbatim
  kTypeRaising,
  kTypeChanging,
};

// Short names used in every file format: lex fa ba fc bc bx tb tr tc.
std::string_view RuleKindName(RuleKind kind);
std::optional<RuleKind> ParseRuleKind(std::string_view name);
bool IsBinaryKind(RuleKind kind);
bool IsUnaryKind(RuleKind kind);

enum class RuleMode { kSeenRules, kGeneric };

enum class RuleOrigin { kExtracted, kGenerated };

struct BinaryRule {
  Category left, right, result;
  RuleKind kind = RuleKind::kTreebankBinary;
  long count = 1;
  RuleOrigin origin = RuleOrigin::kExtracted;
};

struct UnaryRule {
  Category source, target;
  RuleKind kind = RuleKind::kTypeChanging;
  long count = 1;
  RuleOrigin origin = RuleOrigin::kExtracted;
};

struct BinaryResult {
  Category result;
  RuleKind kind;
  FeatureBinding binding;  // oriented as (left input, right input)
};

struct UnaryResult {
  Category result;
  RuleKind kind;
};

class GrammarTables {
 public:
  AtomRegistry registry = AtomRegistry::Default();
  // word -> category -> count
  std::map<std::string, std::map<std::string, long>> word_lexicon;
  // category -> total count
  std::map<std::string, long> lexicon;
  std::map<std::pair<std::string, std::string>, std::vector<BinaryRule>> binary;
  std::map<std::string, std::vector<UnaryRule>> unary;  // keyed by source
  std::map<std::string, Category> roots;

  // Adds or accumulates a rule instance (matched on all categories and kind).
  void AddBinary(const BinaryRule& rule);
  void AddUnary(const UnaryRule& rule);
  void AddLexical(const std::string& word, const Category& cat, long count = 1);
  void AddRoot(const Category& cat) { roots.emplace(cat.str(), cat); }

  long TotalBinaryCount() const;
  long TotalUnaryCount() const;

  // Grammar directory: lexicon.txt, binary_rules.txt, unary_rules.txt,
  // roots.txt and, when the atom inventory differs from the default,
  // atoms.txt. Throws IoError / FormatError.
  static GrammarTables LoadDirectory(const std::string& dir);
  void SaveDirectory(const std::string& dir) const;
};

// The combinator schemata, in inference order: forward/backward application,
// forward/backward composition, backward crossed composition. Each requires
// the cancelling categories to unify. Modifier (X|X) and type-raised
// (T|(T|A)) functors pass the unified features of the cancelled part on to
// their result.
std::vector<BinaryResult> GenericBinary(const Category& left, const Category& right);

// kGeneric returns GenericBinary. kSeenRules returns the table instances for
// (left, right): combinator instances only when the schema licenses them
// (up to features), treebank-binary instances verbatim.
std::vector<BinaryResult> ApplyBinary(const Category& left, const Category& right,
                                      const GrammarTables& tables,
                                      RuleMode mode = RuleMode::kSeenRules);

// Targets of every unary table rule whose source unifies with `cat`. Unary
// rules are never generated from a schema.
std::vector<UnaryResult> ApplyUnary(const Category& cat, const GrammarTables& tables);

// Classifies an observed binary node: first combinator whose result unifies
// with `parent`, else treebank-binary.
RuleKind InferBinaryKind(const Category& left, const Category& right, const Category& parent);
// Type-raising when `target` is T|(T|A) with A unifying with `source`.
RuleKind InferUnaryKind(const Category& source, const Category& target);

// The loaded grammar directory: tables plus dependency schema.
struct Grammar {
  GrammarTables tables;
  MarkedupTable markedup;

  // markedup.txt is optional; categories without an entry use defaults.
  static Grammar LoadDirectory(const std::string& dir);
};

}  // namespace ccgbeam

#endif  // CCGBEAM_GRAMMAR_HPP_
