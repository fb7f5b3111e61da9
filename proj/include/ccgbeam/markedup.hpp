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

// Dependency schema ("markedup") for lexical categories: which argument
// nodes open a numbered dependency slot, how head variables are shared
// between nodes, and which coindexations produce long-range dependencies.
//
// Annotation syntax, written after any atom or closing bracket:
//   {n}    slot n on that node
//   {V}    head variable V        {V*}  head variable V, long-range binding
//   :V     head variable V        :V*   same, long-range
// Nodes without an explicit variable get one by position: a complex node
// shares the variable of its result; atoms on the root's result spine are the
// lexical head "_"; any other atom gets a fresh variable.

#ifndef CCGBEAM_MARKEDUP_HPP_
#define CCGBEAM_MARKEDUP_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ccgbeam/category.hpp"

namespace ccgbeam {

// Labelled head-argument dependency between two token positions.
struct Dependency {
  int head = 0;
  std::string category;  // lexical category of the head word
  int slot = 0;
  int argument = 0;
  bool long_range = false;

  friend auto operator<=>(const Dependency&, const Dependency&) = default;
};

inline constexpr std::string_view kSelfVariable = "_";

struct AnnotatedNode {
  std::string var;
  int slot = 0;  // 0 = no slot
  bool long_range = false;
};

struct AnnotatedCategory {
  Category category;
  std::vector<AnnotatedNode> nodes;  // preorder, one per category node
  int num_slots = 0;

  // Preorder offset of the node for each slot (index 0 unused).
  std::vector<int> SlotOffsets() const;
  // Round-trippable annotation text with every variable and slot explicit.
  std::string ToString() const;
};

// Parses one annotated category. Throws FormatError.
AnnotatedCategory ParseAnnotated(std::string_view text,
                                 const AtomRegistry& registry = AtomRegistry::Default());

// Fallback annotation: arguments on the result spine get slots numbered in
// textual order, skipping the result half of modifier-shaped categories
// (their heads come from the argument); spine atoms head to "_"; every
// argument gets fresh, uncoindexed variables.
AnnotatedCategory DefaultAnnotation(const Category& cat);

class MarkedupTable {
 public:
  struct Entry {
    AnnotatedCategory annotated;
    std::vector<std::string> relations;  // relation name per slot, may be short
  };

  // One record per line: ANNOTATED-CATEGORY [TAB relation-1 TAB relation-2 ...].
  // '#' lines are comments. Throws FormatError with the line number on
  // syntax errors, duplicate categories and dangling head variables.
  static MarkedupTable Parse(std::string_view text,
                             const AtomRegistry& registry = AtomRegistry::Default());
  static MarkedupTable Load(const std::string& path,
                            const AtomRegistry& registry = AtomRegistry::Default());

  // The table entry for `cat`, or its default annotation.
  AnnotatedCategory Resolve(const Category& cat) const;
  // Relation name for (category, slot), empty when none is recorded.
  std::string RelationName(const std::string& category, int slot) const;

  bool Contains(const std::string& category) const { return entries_.count(category) > 0; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace ccgbeam

#endif  // CCGBEAM_MARKEDUP_HPP_
