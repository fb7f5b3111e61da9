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

#include "ccgbeam/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "ccgbeam/errors.hpp"
#include "ccgbeam/eval.hpp"
#include "ccgbeam/heads.hpp"
#include "ccgbeam/multitag.hpp"
#include "ccgbeam/score.hpp"
#include "text_io.hpp"

namespace ccgbeam {

namespace {

void CollectLeaves(const Tree& t, std::vector<const Tree*>& out) {
  if (t.is_leaf()) {
    out.push_back(&t);
    return;
  }
  for (const auto& c : t.children) CollectLeaves(c, out);
}

void AppendTree(const Tree& t, std::string& out) {
  if (t.is_leaf()) {
    out += "(<L " + t.category.str() + " " + t.word + " " + std::to_string(t.index) + ">)";
    return;
  }
  out += "(<T " + t.category.str() + " " + std::string(RuleKindName(t.kind)) + ">";
  for (const auto& c : t.children) {
    out += ' ';
    AppendTree(c, out);
  }
  out += ')';
}

class TreeParser {
 public:
  TreeParser(std::string_view text, const AtomRegistry& registry, int line)
      : text_(text), registry_(registry), line_(line) {}

  Tree Parse() {
    Tree t = Node();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing text after tree");
    return t;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError(what + " at column " + std::to_string(pos_ + 1), line_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Category ParseCat(const std::string& s) {
    try {
      return ParseCategory(s, registry_);
    } catch (const FormatError& e) {
      throw FormatError(e.message(), line_);
    }
  }

  Tree Node() {
    Expect('(');
    Expect('<');
    const size_t close = text_.find('>', pos_);
    if (close == std::string_view::npos) Fail("unterminated node header");
    const auto fields = detail::Tokens(text_.substr(pos_, close - pos_));
    pos_ = close + 1;
    Tree t;
    if (fields.size() == 4 && fields[0] == "L") {
      t.category = ParseCat(fields[1]);
      t.kind = RuleKind::kLexical;
      t.word = fields[2];
      t.index = static_cast<int>(detail::ParseLong(fields[3], line_));
      Expect(')');
      return t;
    }
    if (fields.size() != 3 || fields[0] != "T") Fail("malformed node header");
    t.category = ParseCat(fields[1]);
    auto kind = ParseRuleKind(fields[2]);
    if (!kind || *kind == RuleKind::kLexical) Fail("unknown rule kind '" + fields[2] + "'");
    t.kind = *kind;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) Fail("unbalanced brackets");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      t.children.push_back(Node());
    }
    return t;
  }

  std::string_view text_;
  const AtomRegistry& registry_;
  int line_;
  size_t pos_ = 0;
};

void CheckNode(const Tree& t, int& next_leaf) {
  if (t.is_leaf()) {
    if (t.kind != RuleKind::kLexical) throw FormatError("internal node without children");
    if (t.index != next_leaf) {
      throw FormatError("leaf index " + std::to_string(t.index) + ", expected " +
                        std::to_string(next_leaf));
    }
    ++next_leaf;
    return;
  }
  const size_t arity = t.children.size();
  if (IsBinaryKind(t.kind) && arity != 2) {
    throw FormatError(std::string(RuleKindName(t.kind)) + " node needs two children");
  }
  if (IsUnaryKind(t.kind) && arity != 1) {
    throw FormatError(std::string(RuleKindName(t.kind)) + " node needs one child");
  }
  for (const auto& c : t.children) CheckNode(c, next_leaf);
}

void ExtractNode(const Tree& t, GrammarTables& tables) {
  if (t.is_leaf()) {
    tables.AddLexical(t.word, t.category);
    return;
  }
  for (const auto& c : t.children) ExtractNode(c, tables);
  if (t.children.size() == 1) {
    const Category& src = t.children[0].category;
    tables.AddUnary({src, t.category, InferUnaryKind(src, t.category)});
  } else {
    const Category& l = t.children[0].category;
    const Category& r = t.children[1].category;
    tables.AddBinary({l, r, t.category, InferBinaryKind(l, r, t.category)});
  }
}

HeadState ReplayHeads(const Tree& t, const MarkedupTable& markedup, std::vector<Dependency>& deps) {
  if (t.is_leaf()) return LexicalHeads(t.index, markedup.Resolve(t.category));
  if (t.children.size() == 1) {
    const Tree& c = t.children[0];
    HeadState h = ReplayHeads(c, markedup, deps);
    Propagation p = PropagateUnary(c.category, h, t.category, t.kind);
    deps.insert(deps.end(), p.filled.begin(), p.filled.end());
    return std::move(p.state);
  }
  const Tree& l = t.children[0];
  const Tree& r = t.children[1];
  HeadState lh = ReplayHeads(l, markedup, deps);
  HeadState rh = ReplayHeads(r, markedup, deps);
  Propagation p = PropagateBinary(l.category, lh, r.category, rh, t.category, t.kind);
  deps.insert(deps.end(), p.filled.begin(), p.filled.end());
  return std::move(p.state);
}

void AddSpanLabels(const Tree& top, ScoreChart& chart) {
  const Tree* base = &top;
  while (IsUnaryKind(base->kind)) base = &base->children.front();
  if (!base->is_leaf() || base != &top) {
    chart.Add(base->start(), base->end(), SpanLabel(top), 0.0);
  }
  for (const auto& c : base->children) AddSpanLabels(c, chart);
}

}  // namespace

std::vector<const Tree*> Tree::Leaves() const {
  std::vector<const Tree*> out;
  CollectLeaves(*this, out);
  return out;
}

int Tree::start() const {
  const Tree* t = this;
  while (!t->is_leaf()) t = &t->children.front();
  return t->index;
}

int Tree::end() const {
  const Tree* t = this;
  while (!t->is_leaf()) t = &t->children.back();
  return t->index + 1;
}

bool operator==(const Tree& a, const Tree& b) {
  return a.category == b.category && a.kind == b.kind && a.word == b.word &&
         a.index == b.index && a.children == b.children;
}

std::string FormatTree(const Tree& tree) {
  std::string out;
  AppendTree(tree, out);
  return out;
}

Tree ParseTree(std::string_view text, const AtomRegistry& registry, int line) {
  return TreeParser(text, registry, line).Parse();
}

void ValidateTree(const Tree& tree) {
  int next_leaf = 0;
  CheckNode(tree, next_leaf);
}

std::vector<TreebankEntry> ReadTreebank(std::string_view text, const AtomRegistry& registry,
                                        bool lenient, std::vector<std::string>* errors) {
  std::vector<TreebankEntry> entries;
  std::string pending_id;
  int count = 0;
  const auto lines = detail::Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    std::string_view line = lines[i];
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view kId = "# id:";
      if (line.substr(0, kId.size()) == kId) {
        const auto words = detail::Tokens(line.substr(kId.size()));
        pending_id = words.empty() ? std::string() : words.front();
      }
      continue;
    }
    ++count;
    try {
      TreebankEntry entry;
      entry.tree = ParseTree(line, registry, line_no);
      try {
        ValidateTree(entry.tree);
      } catch (const FormatError& e) {
        throw FormatError(e.message(), line_no);
      }
      entry.id = pending_id.empty() ? std::to_string(count) : pending_id;
      for (const Tree* leaf : entry.tree.Leaves()) entry.tokens.push_back(leaf->word);
      entries.push_back(std::move(entry));
    } catch (const FormatError& e) {
      if (!lenient) throw;
      if (errors != nullptr) errors->push_back(e.what());
    }
    pending_id.clear();
  }
  return entries;
}

std::vector<TreebankEntry> LoadTreebank(const std::string& path, const AtomRegistry& registry,
                                        bool lenient, std::vector<std::string>* errors) {
  return ReadTreebank(detail::ReadFile(path), registry, lenient, errors);
}

std::string WriteTreebank(const std::vector<TreebankEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += "# id: " + e.id + "\n";
    out += FormatTree(e.tree) + "\n";
  }
  return out;
}

GrammarTables ExtractGrammar(const std::vector<TreebankEntry>& entries,
                             const ExtractOptions& options) {
  GrammarTables tables;
  tables.registry = options.registry;
  for (const auto& e : entries) {
    ExtractNode(e.tree, tables);
    tables.AddRoot(e.tree.category);
  }
  if (options.min_count > 1) {
    for (auto it = tables.lexicon.begin(); it != tables.lexicon.end();) {
      if (it->second < options.min_count) {
        for (auto& [word, cats] : tables.word_lexicon) cats.erase(it->first);
        it = tables.lexicon.erase(it);
      } else {
        ++it;
      }
    }
    std::erase_if(tables.word_lexicon, [](const auto& kv) { return kv.second.empty(); });
  }
  return tables;
}

std::vector<Dependency> TreeDependencies(const Tree& tree, const MarkedupTable& markedup) {
  std::vector<Dependency> deps;
  ReplayHeads(tree, markedup, deps);
  std::sort(deps.begin(), deps.end());
  return deps;
}

std::string CheckExpressible(const Tree& t) {
  for (const auto& c : t.children) {
    if (auto why = CheckExpressible(c); !why.empty()) return why;
  }
  if (t.is_leaf() || t.kind == RuleKind::kTreebankBinary || t.kind == RuleKind::kTypeChanging) {
    return {};
  }
  const std::string where = "node " + t.category.str() + " over [" +
                            std::to_string(t.start()) + "," + std::to_string(t.end()) + ")";
  if (t.kind == RuleKind::kTypeRaising) {
    const Category& src = t.children[0].category;
    if (t.category.IsTypeRaised() && Unify(t.category.argument().argument(), src)) return {};
    return where + ": not a type-raising of " + src.str();
  }
  for (const auto& g : GenericBinary(t.children[0].category, t.children[1].category)) {
    if (g.kind == t.kind && Unify(g.result, t.category)) return {};
  }
  return where + ": " + std::string(RuleKindName(t.kind)) + " does not license it";
}

OracleOutput GoldOracle(const std::vector<TreebankEntry>& entries, const MarkedupTable& markedup) {
  std::vector<TaggedSentence> tags;
  std::vector<ScoreChart> charts;
  std::vector<SentenceDeps> deps;
  OracleOutput out;
  for (const auto& e : entries) {
    if (auto why = CheckExpressible(e.tree); !why.empty()) {
      out.skipped.push_back(e.id + ": " + why);
      continue;
    }
    const auto leaves = e.tree.Leaves();
    TaggedSentence sentence;
    SentenceDeps gold;
    for (const Tree* leaf : leaves) {
      sentence.push_back({leaf->index, leaf->word, {{leaf->category.str(), 0.0}}});
      gold.categories.push_back(leaf->category.str());
    }
    ScoreChart chart(static_cast<int>(leaves.size()));
    AddSpanLabels(e.tree, chart);
    gold.deps = TreeDependencies(e.tree, markedup);
    tags.push_back(std::move(sentence));
    charts.push_back(std::move(chart));
    deps.push_back(std::move(gold));
  }
  out.tags = FormatTagFile(tags);
  out.spans = FormatScoreCharts(charts);
  out.deps = FormatDepsFile(deps);
  return out;
}

}  // namespace ccgbeam
