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

#include "ccgbeam/grammar.hpp"

#include <algorithm>
#include <array>
#include <filesystem>

#include "ccgbeam/errors.hpp"
#include "text_io.hpp"

namespace ccgbeam {

namespace {

constexpr std::array<std::pair<RuleKind, std::string_view>, 9> kKindNames = {{
    {RuleKind::kLexical, "lex"},
    {RuleKind::kForwardApplication, "fa"},
    {RuleKind::kBackwardApplication, "ba"},
    {RuleKind::kForwardComposition, "fc"},
    {RuleKind::kBackwardComposition, "bc"},
    {RuleKind::kBackwardCrossedComposition, "bx"},
    {RuleKind::kTreebankBinary, "tb"},
    {RuleKind::kTypeRaising, "tr"},
    {RuleKind::kTypeChanging, "tc"},
}};

// Result of a functor whose argument cancelled against `unified`.
Category FunctorResult(const Category& functor, const Category& unified,
                       const std::map<std::string, std::string>& functor_binding) {
  FeatureBinding binding;
  binding.left = functor_binding;
  Category result = binding.Apply(functor.result(), FeatureBinding::Side::kLeft);
  if (functor.IsModifier()) return LinkFeatures(result, unified);
  if (functor.IsTypeRaised()) return LinkFeatures(result, unified.result());
  return result;
}

bool Forward(const Category& c) { return c.is_complex() && c.slash() == Slash::kForward; }
bool Backward(const Category& c) { return c.is_complex() && c.slash() == Slash::kBackward; }

}  // namespace

std::string_view RuleKindName(RuleKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<RuleKind> ParseRuleKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool IsBinaryKind(RuleKind kind) {
  switch (kind) {
    case RuleKind::kForwardApplication:
    case RuleKind::kBackwardApplication:
    case RuleKind::kForwardComposition:
    case RuleKind::kBackwardComposition:
    case RuleKind::kBackwardCrossedComposition:
    case RuleKind::kTreebankBinary:
      return true;
    default:
      return false;
  }
}

bool IsUnaryKind(RuleKind kind) {
  return kind == RuleKind::kTypeRaising || kind == RuleKind::kTypeChanging;
}

std::vector<BinaryResult> GenericBinary(const Category& left, const Category& right) {
  std::vector<BinaryResult> out;
  // X/Y Y => X
  if (Forward(left)) {
    if (auto u = Unify(left.argument(), right)) {
      out.push_back({FunctorResult(left, u->category, u->binding.left),
                     RuleKind::kForwardApplication, u->binding});
    }
  }
  // Y X\Y => X
  if (Backward(right)) {
    if (auto u = Unify(right.argument(), left)) {
      out.push_back({FunctorResult(right, u->category, u->binding.left),
                     RuleKind::kBackwardApplication, u->binding.Swapped()});
    }
  }
  // X/Y Y/Z => X/Z
  if (Forward(left) && Forward(right)) {
    if (auto u = Unify(left.argument(), right.result())) {
      FeatureBinding arg_side;
      arg_side.right = u->binding.right;
      Category z = arg_side.Apply(right.argument(), FeatureBinding::Side::kRight);
      out.push_back({Category::Complex(FunctorResult(left, u->category, u->binding.left),
                                       Slash::kForward, z),
                     RuleKind::kForwardComposition, u->binding});
    }
  }
  // Y\Z X\Y => X\Z
  if (Backward(left) && Backward(right)) {
    if (auto u = Unify(right.argument(), left.result())) {
      FeatureBinding arg_side;
      arg_side.right = u->binding.right;
      Category z = arg_side.Apply(left.argument(), FeatureBinding::Side::kRight);
      out.push_back({Category::Complex(FunctorResult(right, u->category, u->binding.left),
                                       Slash::kBackward, z),
                     RuleKind::kBackwardComposition, u->binding.Swapped()});
    }
  }
  // Y/Z X\Y => X/Z
  if (Forward(left) && Backward(right)) {
    if (auto u = Unify(right.argument(), left.result())) {
      FeatureBinding arg_side;
      arg_side.right = u->binding.right;
      Category z = arg_side.Apply(left.argument(), FeatureBinding::Side::kRight);
      out.push_back({Category::Complex(FunctorResult(right, u->category, u->binding.left),
                                       Slash::kForward, z),
                     RuleKind::kBackwardCrossedComposition, u->binding.Swapped()});
    }
  }
  return out;
}

std::vector<BinaryResult> ApplyBinary(const Category& left, const Category& right,
                                      const GrammarTables& tables, RuleMode mode) {
  if (mode == RuleMode::kGeneric) return GenericBinary(left, right);
  std::vector<BinaryResult> out;
  auto it = tables.binary.find({left.str(), right.str()});
  if (it == tables.binary.end()) return out;
  std::vector<BinaryResult> generic;
  bool generic_done = false;
  for (const BinaryRule& rule : it->second) {
    if (rule.kind == RuleKind::kTreebankBinary) {
      out.push_back({rule.result, rule.kind, {}});
      continue;
    }
    if (!generic_done) {
      generic = GenericBinary(left, right);
      generic_done = true;
    }
    for (const auto& g : generic) {
      if (g.kind == rule.kind && Unify(g.result, rule.result)) {
        out.push_back({rule.result, rule.kind, g.binding});
        break;
      }
    }
  }
  return out;
}

std::vector<UnaryResult> ApplyUnary(const Category& cat, const GrammarTables& tables) {
  std::vector<UnaryResult> out;
  for (const auto& [source, rules] : tables.unary) {
    for (const UnaryRule& rule : rules) {
      if (rule.source.bare() != cat.bare() || !Unify(rule.source, cat)) continue;
      if (rule.target == cat) continue;
      const bool seen = std::any_of(out.begin(), out.end(), [&](const UnaryResult& u) {
        return u.kind == rule.kind && u.result == rule.target;
      });
      if (!seen) out.push_back({rule.target, rule.kind});
    }
  }
  return out;
}

RuleKind InferBinaryKind(const Category& left, const Category& right, const Category& parent) {
  for (const auto& g : GenericBinary(left, right)) {
    if (Unify(g.result, parent)) return g.kind;
  }
  return RuleKind::kTreebankBinary;
}

RuleKind InferUnaryKind(const Category& source, const Category& target) {
  if (target.IsTypeRaised() && Unify(target.argument().argument(), source)) {
    return RuleKind::kTypeRaising;
  }
  return RuleKind::kTypeChanging;
}

void GrammarTables::AddBinary(const BinaryRule& rule) {
  auto& rules = binary[{rule.left.str(), rule.right.str()}];
  for (auto& existing : rules) {
    if (existing.result == rule.result && existing.kind == rule.kind) {
      existing.count += rule.count;
      return;
    }
  }
  rules.push_back(rule);
}

void GrammarTables::AddUnary(const UnaryRule& rule) {
  auto& rules = unary[rule.source.str()];
  for (auto& existing : rules) {
    if (existing.target == rule.target && existing.kind == rule.kind) {
      existing.count += rule.count;
      return;
    }
  }
  rules.push_back(rule);
}

void GrammarTables::AddLexical(const std::string& word, const Category& cat, long count) {
  word_lexicon[word][cat.str()] += count;
  lexicon[cat.str()] += count;
}

long GrammarTables::TotalBinaryCount() const {
  long total = 0;
  for (const auto& [key, rules] : binary) {
    for (const auto& r : rules) total += r.count;
  }
  return total;
}

long GrammarTables::TotalUnaryCount() const {
  long total = 0;
  for (const auto& [key, rules] : unary) {
    for (const auto& r : rules) total += r.count;
  }
  return total;
}

namespace {

std::string JoinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

RuleKind KindField(const std::string& s, int line_no) {
  auto kind = ParseRuleKind(s);
  if (!kind) throw FormatError("unknown rule kind '" + s + "'", line_no);
  return *kind;
}

template <typename Fn>
void ForEachRecord(const std::string& path, Fn&& fn) {
  const auto lines = detail::Lines(detail::ReadFile(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    const int line_no = static_cast<int>(i + 1);
    try {
      fn(detail::Split(line, '\t'), line_no);
    } catch (const FormatError& e) {
      if (e.line() > 0) throw FormatError(path + ": " + e.what());
      throw FormatError(path + ": " + e.what(), line_no);
    }
  }
}

}  // namespace

GrammarTables GrammarTables::LoadDirectory(const std::string& dir) {
  GrammarTables tables;
  const std::string atoms_path = JoinPath(dir, "atoms.txt");
  if (std::filesystem::exists(atoms_path)) {
    tables.registry = AtomRegistry::Parse(detail::ReadFile(atoms_path));
  }
  const AtomRegistry& reg = tables.registry;
  ForEachRecord(JoinPath(dir, "lexicon.txt"), [&](const auto& f, int line_no) {
    if (f.size() == 3) {
      Category cat = ParseCategory(f[1], reg);
      tables.word_lexicon[f[0]][cat.str()] += detail::ParseLong(f[2], line_no);
    } else if (f.size() == 2) {
      Category cat = ParseCategory(f[0], reg);
      tables.lexicon[cat.str()] += detail::ParseLong(f[1], line_no);
    } else {
      throw FormatError("lexicon records have 2 or 3 fields", line_no);
    }
  });
  ForEachRecord(JoinPath(dir, "binary_rules.txt"), [&](const auto& f, int line_no) {
    if (f.size() != 5) throw FormatError("binary rule records have 5 fields", line_no);
    BinaryRule rule{ParseCategory(f[0], reg), ParseCategory(f[1], reg),
                    ParseCategory(f[2], reg), KindField(f[3], line_no),
                    detail::ParseLong(f[4], line_no)};
    if (!IsBinaryKind(rule.kind)) throw FormatError("not a binary rule kind", line_no);
    tables.AddBinary(rule);
  });
  ForEachRecord(JoinPath(dir, "unary_rules.txt"), [&](const auto& f, int line_no) {
    if (f.size() != 4) throw FormatError("unary rule records have 4 fields", line_no);
    UnaryRule rule{ParseCategory(f[0], reg), ParseCategory(f[1], reg), KindField(f[2], line_no),
                   detail::ParseLong(f[3], line_no)};
    if (!IsUnaryKind(rule.kind)) throw FormatError("not a unary rule kind", line_no);
    if (rule.source == rule.target) throw FormatError("unary rule source equals target", line_no);
    tables.AddUnary(rule);
  });
  ForEachRecord(JoinPath(dir, "roots.txt"), [&](const auto& f, int) {
    tables.AddRoot(ParseCategory(f[0], reg));
  });
  return tables;
}

void GrammarTables::SaveDirectory(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  std::string lex;
  for (const auto& [word, cats] : word_lexicon) {
    for (const auto& [cat, count] : cats) lex += word + "\t" + cat + "\t" + std::to_string(count) + "\n";
  }
  for (const auto& [cat, count] : lexicon) lex += cat + "\t" + std::to_string(count) + "\n";
  detail::WriteFile(JoinPath(dir, "lexicon.txt"), lex);

  std::string bin;
  for (const auto& [key, rules] : binary) {
    for (const auto& r : rules) {
      bin += r.left.str() + "\t" + r.right.str() + "\t" + r.result.str() + "\t" +
             std::string(RuleKindName(r.kind)) + "\t" + std::to_string(r.count) + "\n";
    }
  }
  detail::WriteFile(JoinPath(dir, "binary_rules.txt"), bin);

  std::string un;
  for (const auto& [key, rules] : unary) {
    for (const auto& r : rules) {
      un += r.source.str() + "\t" + r.target.str() + "\t" + std::string(RuleKindName(r.kind)) +
            "\t" + std::to_string(r.count) + "\n";
    }
  }
  detail::WriteFile(JoinPath(dir, "unary_rules.txt"), un);

  std::string rts;
  for (const auto& [key, cat] : roots) rts += key + "\n";
  detail::WriteFile(JoinPath(dir, "roots.txt"), rts);

  const AtomRegistry& def = AtomRegistry::Default();
  if (registry.atoms() != def.atoms() || registry.featured() != def.featured() ||
      registry.features() != def.features()) {
    detail::WriteFile(JoinPath(dir, "atoms.txt"), registry.Serialize());
  }
}

Grammar Grammar::LoadDirectory(const std::string& dir) {
  Grammar grammar;
  grammar.tables = GrammarTables::LoadDirectory(dir);
  const std::string path = JoinPath(dir, "markedup.txt");
  if (std::filesystem::exists(path)) {
    grammar.markedup = MarkedupTable::Load(path, grammar.tables.registry);
  }
  return grammar;
}

}  // namespace ccgbeam
