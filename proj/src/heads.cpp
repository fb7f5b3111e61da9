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

#include "ccgbeam/heads.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ccgbeam {
namespace {

// Union-find over the variables of the constituents taking part in one rule
// application. Each class accumulates the heads of its members.
class VarMerger {
 public:
  int Add(std::vector<int> heads) {
    parent_.push_back(static_cast<int>(parent_.size()));
    heads_.push_back(std::move(heads));
    return parent_.back();
  }
  int Fresh() { return Add({}); }

  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    std::vector<int> merged;
    std::set_union(heads_[a].begin(), heads_[a].end(), heads_[b].begin(), heads_[b].end(),
                   std::back_inserter(merged));
    heads_[a] = std::move(merged);
    heads_[b].clear();
  }

  const std::vector<int>& Heads(int x) { return heads_[Find(x)]; }

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> heads_;
};

class Application {
 public:
  // Imports a constituent's variables and pending slots; returns its nodes
  // renumbered into the merger's id space.
  std::vector<HeadNode> Import(const HeadState& state) {
    const int offset = merger_.Fresh();
    // The fresh placeholder takes id `offset`; real variables follow it.
    std::vector<HeadNode> nodes;
    nodes.reserve(state.nodes.size());
    for (const auto& heads : state.vars) merger_.Add(heads);
    for (const auto& n : state.nodes) nodes.push_back({n.var + offset + 1, n.long_range});
    for (auto p : state.pending) {
      p.var += offset + 1;
      pending_.push_back(std::move(p));
    }
    return nodes;
  }

  // Cancels functor nodes [f, f+len) against argument nodes [a, a+len).
  void Align(const std::vector<HeadNode>& functor, int f, const std::vector<HeadNode>& argument,
             int a, int len) {
    for (int k = 0; k < len; ++k) {
      if (!functor[f + k].long_range) continue;
      const int target = argument[a + k].var;
      for (auto& p : pending_) {
        if (p.var == target) p.long_range = true;
      }
    }
    for (int k = 0; k < len; ++k) merger_.Union(functor[f + k].var, argument[a + k].var);
  }

  void Merge(int a, int b) { merger_.Union(a, b); }
  int Fresh() { return merger_.Fresh(); }

  // Nodes for `cat` where the result spine heads to `spine_var` and every
  // argument gets fresh variables.
  void AppendDefault(const Category& cat, int spine_var, std::vector<HeadNode>& out) {
    out.push_back({spine_var, false});
    if (cat.is_complex()) {
      AppendDefault(cat.result(), spine_var, out);
      AppendDefault(cat.argument(), Fresh(), out);
    }
  }

  Propagation Finish(const std::vector<HeadNode>& nodes) {
    Propagation out;
    std::map<int, int> compact;
    for (const auto& n : nodes) {
      const int root = merger_.Find(n.var);
      auto [it, inserted] = compact.emplace(root, static_cast<int>(out.state.vars.size()));
      if (inserted) out.state.vars.push_back(merger_.Heads(root));
      out.state.nodes.push_back({it->second, n.long_range});
    }
    for (auto& p : pending_) {
      const int root = merger_.Find(p.var);
      const auto& heads = merger_.Heads(root);
      if (!heads.empty()) {
        for (int h : heads) {
          if (h != p.head) out.filled.push_back({p.head, *p.category, p.slot, h, p.long_range});
        }
      } else if (auto it = compact.find(root); it != compact.end()) {
        p.var = it->second;
        out.state.pending.push_back(std::move(p));
      }
    }
    return out;
  }

 private:
  VarMerger merger_;
  std::vector<PendingDependency> pending_;
};

std::vector<HeadNode> Slice(const std::vector<HeadNode>& nodes, int from, int len) {
  return {nodes.begin() + from, nodes.begin() + from + len};
}

void Append(std::vector<HeadNode>& out, const std::vector<HeadNode>& nodes, int from, int len) {
  out.insert(out.end(), nodes.begin() + from, nodes.begin() + from + len);
}

bool SameShape(const Category& a, const Category& b) {
  if (a.is_atomic() != b.is_atomic()) return false;
  if (a.is_atomic()) return true;
  return a.slash() == b.slash() && SameShape(a.result(), b.result()) &&
         SameShape(a.argument(), b.argument());
}

// Type-changing between categories of the same shape: the result spine heads
// to the source head, and argument atoms keep the source variable where the
// atom names agree.
int AppendAligned(Application& app, const Category& target, const Category& source,
                  const std::vector<HeadNode>& src_nodes, int src_offset, int spine_var,
                  bool on_spine, std::vector<HeadNode>& out) {
  const size_t index = out.size();
  out.push_back({spine_var, false});
  if (target.is_atomic()) {
    if (!on_spine) {
      out[index] = target.name() == source.name() ? src_nodes[src_offset] : HeadNode{app.Fresh()};
    }
    return out[index].var;
  }
  const int result_var = AppendAligned(app, target.result(), source.result(), src_nodes,
                                       src_offset + 1, spine_var, on_spine, out);
  AppendAligned(app, target.argument(), source.argument(), src_nodes,
                src_offset + 1 + source.result().size(), spine_var, false, out);
  if (!on_spine) out[index] = {result_var, false};
  return out[index].var;
}

}  // namespace

HeadState LexicalHeads(int index, const AnnotatedCategory& annotated) {
  HeadState state;
  std::map<std::string, int> ids;
  auto category = std::make_shared<const std::string>(annotated.category.str());
  for (const auto& node : annotated.nodes) {
    auto [it, inserted] = ids.emplace(node.var, static_cast<int>(state.vars.size()));
    if (inserted) {
      state.vars.push_back(node.var == kSelfVariable ? std::vector<int>{index} : std::vector<int>{});
    }
    state.nodes.push_back({it->second, node.long_range});
  }
  for (size_t i = 0; i < annotated.nodes.size(); ++i) {
    const auto& node = annotated.nodes[i];
    if (node.slot == 0) continue;
    const int var = state.nodes[i].var;
    if (!state.vars[var].empty()) continue;  // bound to the word itself
    state.pending.push_back({index, category, node.slot, var, false});
  }
  return state;
}

Propagation PropagateBinary(const Category& left, const HeadState& left_heads,
                            const Category& right, const HeadState& right_heads,
                            const Category& result, RuleKind kind) {
  Application app;
  const auto ln = app.Import(left_heads);
  const auto rn = app.Import(right_heads);
  std::vector<HeadNode> out;

  switch (kind) {
    case RuleKind::kForwardApplication: {
      const int x = left.result().size();
      app.Align(ln, 1 + x, rn, 0, right.size());
      out = left.IsModifier() ? rn : Slice(ln, 1, x);
      break;
    }
    case RuleKind::kBackwardApplication: {
      const int x = right.result().size();
      app.Align(rn, 1 + x, ln, 0, left.size());
      out = right.IsModifier() ? ln : Slice(rn, 1, x);
      break;
    }
    case RuleKind::kForwardComposition: {
      const int x = left.result().size();
      const int y = right.result().size();
      app.Align(ln, 1 + x, rn, 1, y);
      std::vector<HeadNode> xs = left.IsModifier() ? Slice(rn, 1, y) : Slice(ln, 1, x);
      out.push_back({xs[0].var, false});
      Append(out, xs, 0, static_cast<int>(xs.size()));
      Append(out, rn, 1 + y, right.argument().size());
      break;
    }
    case RuleKind::kBackwardComposition:
    case RuleKind::kBackwardCrossedComposition: {
      const int x = right.result().size();
      const int y = left.result().size();
      app.Align(rn, 1 + x, ln, 1, y);
      std::vector<HeadNode> xs = right.IsModifier() ? Slice(ln, 1, y) : Slice(rn, 1, x);
      out.push_back({xs[0].var, false});
      Append(out, xs, 0, static_cast<int>(xs.size()));
      Append(out, ln, 1 + y, left.argument().size());
      break;
    }
    default: {
      // Treebank-binary instances: coordination of like categories merges
      // both sides; absorbed material (punctuation, conjunctions) leaves the
      // other side's structure in place.
      const bool like_left = SameIgnoringFeatures(result, left);
      const bool like_right = SameIgnoringFeatures(result, right);
      if (like_left && like_right) {
        out = ln;
        for (size_t i = 0; i < ln.size(); ++i) app.Merge(ln[i].var, rn[i].var);
      } else if (like_right) {
        out = rn;
      } else if (like_left) {
        out = ln;
      } else if (result.IsModifier() && SameIgnoringFeatures(result.result(), right)) {
        // conj X => X\X: both halves share the conjunct's variables so the
        // later application unifies the two conjuncts.
        out.push_back(rn[0]);
        Append(out, rn, 0, static_cast<int>(rn.size()));
        Append(out, rn, 0, static_cast<int>(rn.size()));
      } else if (result.IsModifier() && SameIgnoringFeatures(result.result(), left)) {
        out.push_back(ln[0]);
        Append(out, ln, 0, static_cast<int>(ln.size()));
        Append(out, ln, 0, static_cast<int>(ln.size()));
      } else {
        app.AppendDefault(result, rn[0].var, out);
      }
      break;
    }
  }
  return app.Finish(out);
}

Propagation PropagateUnary(const Category& source, const HeadState& source_heads,
                           const Category& target, RuleKind kind) {
  Application app;
  const auto sn = app.Import(source_heads);
  std::vector<HeadNode> out;
  if (SameIgnoringFeatures(source, target)) {
    out = sn;
  } else if (kind == RuleKind::kTypeRaising && target.IsTypeRaised() &&
             target.argument().argument().size() == source.size()) {
    // T|(T|A): both T share fresh variables, A is the raised constituent.
    std::vector<HeadNode> t;
    app.AppendDefault(target.result(), app.Fresh(), t);
    out.push_back(sn[0]);
    Append(out, t, 0, static_cast<int>(t.size()));
    out.push_back({t[0].var, false});
    Append(out, t, 0, static_cast<int>(t.size()));
    Append(out, sn, 0, static_cast<int>(sn.size()));
  } else if (SameShape(source, target)) {
    AppendAligned(app, target, source, sn, 0, sn[0].var, true, out);
  } else {
    app.AppendDefault(target, sn[0].var, out);
  }
  return app.Finish(out);
}

}  // namespace ccgbeam
