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

#include "ccgbeam/category.hpp"

#include <cctype>
#include <sstream>

#include "ccgbeam/errors.hpp"

namespace ccgbeam {

bool IsVariableFeature(std::string_view feature) {
  return !feature.empty() && std::isupper(static_cast<unsigned char>(feature[0]));
}

AtomRegistry::AtomRegistry(std::set<std::string> atoms, std::set<std::string> featured,
                           std::set<std::string> features)
    : atoms_(std::move(atoms)), featured_(std::move(featured)), features_(std::move(features)) {
  atoms_lookup_.insert(atoms_.begin(), atoms_.end());
}

const AtomRegistry& AtomRegistry::Default() {
  static const AtomRegistry registry(
      {"S", "N", "NP", "PP", "conj", "comma", "period", "colon", "semicolon", "LRB", "RRB"},
      {"S", "N", "NP"},
      {"dcl", "b", "ng", "pt", "pss", "adj", "to", "q", "qem", "em", "inv", "wq", "frg",
       "for", "intj", "bem", "nb", "num", "thr", "expl", "poss", "asup", "X"});
  return registry;
}

AtomRegistry AtomRegistry::Parse(std::string_view text) {
  std::set<std::string> atoms, featured, features;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string directive, value, flag;
    fields >> directive >> value >> flag;
    if (directive.empty()) continue;
    if (value.empty()) throw FormatError("missing value after '" + directive + "'", line_no);
    if (directive == "atom") {
      atoms.insert(value);
      if (flag == "featured") {
        featured.insert(value);
      } else if (!flag.empty()) {
        throw FormatError("unknown atom flag '" + flag + "'", line_no);
      }
    } else if (directive == "feature") {
      features.insert(value);
    } else {
      throw FormatError("unknown directive '" + directive + "'", line_no);
    }
  }
  return AtomRegistry(std::move(atoms), std::move(featured), std::move(features));
}

std::string AtomRegistry::Serialize() const {
  std::string out;
  for (const auto& atom : atoms_) {
    out += "atom " + atom + (featured_.count(atom) ? " featured\n" : "\n");
  }
  for (const auto& feature : features_) out += "feature " + feature + "\n";
  return out;
}

bool AtomRegistry::HasAtom(std::string_view name) const {
  return atoms_lookup_.find(name) != atoms_lookup_.end();
}

bool AtomRegistry::TakesFeature(std::string_view name) const {
  return featured_.count(std::string(name)) > 0;
}

bool AtomRegistry::HasFeature(std::string_view feature) const {
  return features_.count(std::string(feature)) > 0;
}

Category Category::Atomic(std::string name, std::string feature) {
  auto node = std::make_shared<Node>();
  node->atomic = true;
  node->bare = name;
  node->text = feature.empty() ? name : name + "[" + feature + "]";
  node->name = std::move(name);
  node->feature = std::move(feature);
  return Category(std::move(node));
}

Category Category::Complex(const Category& result, Slash slash, const Category& argument) {
  auto node = std::make_shared<Node>();
  node->atomic = false;
  node->slash = slash;
  node->result = result;
  node->argument = argument;
  auto wrap = [](const Category& c, const std::string& s) {
    return c.is_atomic() ? s : "(" + s + ")";
  };
  const char sl = static_cast<char>(slash);
  node->text = wrap(result, result.str()) + sl + wrap(argument, argument.str());
  node->bare = wrap(result, result.bare()) + sl + wrap(argument, argument.bare());
  node->size = 1 + result.size() + argument.size();
  return Category(std::move(node));
}

bool Category::IsModifier() const {
  return is_complex() && result().bare() == argument().bare();
}

bool Category::IsTypeRaised() const {
  return is_complex() && argument().is_complex() &&
         argument().result().bare() == result().bare() && argument().slash() != slash();
}

Category Category::StripFeatures() const {
  if (is_atomic()) return feature().empty() ? *this : Atomic(name());
  return Complex(result().StripFeatures(), slash(), argument().StripFeatures());
}

Category Category::EraseVariables() const {
  if (is_atomic()) return IsVariableFeature(feature()) ? Atomic(name()) : *this;
  return Complex(result().EraseVariables(), slash(), argument().EraseVariables());
}

namespace {

class CategoryParser {
 public:
  CategoryParser(std::string_view text, const AtomRegistry& registry)
      : text_(text), registry_(registry) {}

  Category Parse() {
    if (text_.empty()) Fail("empty category");
    Category cat = ParseSeq();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return cat;
  }

 private:
  // seq := term (slash term)*, left associative.
  Category ParseSeq() {
    Category cat = ParseTerm();
    while (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\')) {
      Slash slash = text_[pos_] == '/' ? Slash::kForward : Slash::kBackward;
      ++pos_;
      Category arg = ParseTerm();
      cat = Category::Complex(cat, slash, arg);
    }
    return cat;
  }

  Category ParseTerm() {
    if (pos_ >= text_.size()) Fail("unexpected end of category");
    if (text_[pos_] == '(') {
      ++pos_;
      Category inner = ParseSeq();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("missing ')'");
      ++pos_;
      return inner;
    }
    return ParseAtom();
  }

  Category ParseAtom() {
    size_t start = pos_;
    while (pos_ < text_.size() && !IsSpecial(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) Fail("expected atomic category");
    if (!registry_.HasAtom(name)) Fail("unknown atomic category '" + name + "'");
    std::string feature;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      size_t close = text_.find(']', pos_);
      if (close == std::string_view::npos) Fail("missing ']'");
      feature = std::string(text_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      if (feature.empty()) Fail("empty feature");
      if (!registry_.TakesFeature(name)) Fail("atom '" + name + "' cannot carry a feature");
      if (!registry_.HasFeature(feature)) Fail("unknown feature '" + feature + "'");
    }
    return Category::Atomic(std::move(name), std::move(feature));
  }

  static bool IsSpecial(char c) {
    return c == '(' || c == ')' || c == '/' || c == '\\' || c == '[' || c == ']' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw FormatError("category '" + std::string(text_) + "': " + msg);
  }

  std::string_view text_;
  const AtomRegistry& registry_;
  size_t pos_ = 0;
};

// Feature unification state over one pair of categories.
class Unifier {
 public:
  std::optional<Category> Run(const Category& a, const Category& b) {
    if (a.is_atomic() != b.is_atomic()) return std::nullopt;
    if (a.is_atomic()) {
      if (a.name() != b.name()) return std::nullopt;
      auto feature = Merge(a.feature(), b.feature());
      if (!feature) return std::nullopt;
      return Category::Atomic(a.name(), *feature);
    }
    if (a.slash() != b.slash()) return std::nullopt;
    auto res = Run(a.result(), b.result());
    if (!res) return std::nullopt;
    auto arg = Run(a.argument(), b.argument());
    if (!arg) return std::nullopt;
    return Category::Complex(*res, a.slash(), *arg);
  }

  FeatureBinding binding;

 private:
  // Resolves a feature through the side's binding so far.
  static std::string Resolve(const std::string& f, const std::map<std::string, std::string>& m) {
    if (!IsVariableFeature(f)) return f;
    auto it = m.find(f);
    return it == m.end() ? f : it->second;
  }

  std::optional<std::string> Merge(const std::string& fa_raw, const std::string& fb_raw) {
    std::string fa = Resolve(fa_raw, binding.left);
    std::string fb = Resolve(fb_raw, binding.right);
    const bool va = IsVariableFeature(fa), vb = IsVariableFeature(fb);
    if (fa == fb) return fa;
    if (fa.empty()) return fb;
    if (fb.empty()) return fa;
    if (va && vb) return fa;
    if (va) {
      binding.left[fa] = fb;
      return fb;
    }
    if (vb) {
      binding.right[fb] = fa;
      return fa;
    }
    return std::nullopt;
  }
};

}  // namespace

Category ParseCategory(std::string_view text, const AtomRegistry& registry) {
  return CategoryParser(text, registry).Parse();
}

Category FeatureBinding::Apply(const Category& cat, Side side) const {
  const auto& m = side == Side::kLeft ? left : right;
  if (m.empty()) return cat;
  if (cat.is_atomic()) {
    auto it = m.find(cat.feature());
    return it == m.end() ? cat : Category::Atomic(cat.name(), it->second);
  }
  return Category::Complex(Apply(cat.result(), side), cat.slash(), Apply(cat.argument(), side));
}

std::optional<Unification> Unify(const Category& a, const Category& b) {
  if (a.bare() != b.bare()) return std::nullopt;
  Unifier unifier;
  auto cat = unifier.Run(a, b);
  if (!cat) return std::nullopt;
  return Unification{*cat, std::move(unifier.binding)};
}

Category LinkFeatures(const Category& target, const Category& source) {
  if (target.is_atomic()) {
    const bool open = target.feature().empty() || IsVariableFeature(target.feature());
    if (open && !source.feature().empty() && source.feature() != target.feature()) {
      return Category::Atomic(target.name(), source.feature());
    }
    return target;
  }
  return Category::Complex(LinkFeatures(target.result(), source.result()), target.slash(),
                           LinkFeatures(target.argument(), source.argument()));
}

}  // namespace ccgbeam
