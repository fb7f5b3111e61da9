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

// Head and dependency bookkeeping for rule applications.
//
// Every constituent carries a variable per category node (preorder). A
// variable holds the token positions it has been bound to. Cancelling a
// functor argument against a constituent unifies the variables node by node;
// a dependency slot is filled, once per bound head, as soon as its variable
// acquires heads. Slots whose variable no longer appears in the result
// category can never be filled and are dropped.

#ifndef CCGBEAM_HEADS_HPP_
#define CCGBEAM_HEADS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "ccgbeam/category.hpp"
#include "ccgbeam/grammar.hpp"
#include "ccgbeam/markedup.hpp"

namespace ccgbeam {

struct HeadNode {
  int var = 0;
  bool long_range = false;  // starred occurrence in the lexical entry
};

struct PendingDependency {
  int head = 0;
  std::shared_ptr<const std::string> category;
  int slot = 0;
  int var = 0;
  bool long_range = false;
};

struct HeadState {
  std::vector<HeadNode> nodes;          // preorder over the constituent's category
  std::vector<std::vector<int>> vars;   // sorted token positions per variable
  std::vector<PendingDependency> pending;

  const std::vector<int>& heads() const { return vars[nodes[0].var]; }
};

struct Propagation {
  HeadState state;
  std::vector<Dependency> filled;
};

// State for token `index` with lexical category `annotated.category`.
HeadState LexicalHeads(int index, const AnnotatedCategory& annotated);

// Binary rule application producing `result` by `kind`. `result` must be one
// returned by ApplyBinary for (left, right) or observed in a treebank.
Propagation PropagateBinary(const Category& left, const HeadState& left_heads,
                            const Category& right, const HeadState& right_heads,
                            const Category& result, RuleKind kind);

Propagation PropagateUnary(const Category& source, const HeadState& source_heads,
                           const Category& target, RuleKind kind);

}  // namespace ccgbeam

#endif  // CCGBEAM_HEADS_HPP_
