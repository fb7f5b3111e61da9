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

// CCG categories: atoms with optional features, slashes, canonical text form
// and feature unification.

#ifndef CCGBEAM_CATEGORY_HPP_
#define CCGBEAM_CATEGORY_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccgbeam {

enum class Slash : char { kForward = '/', kBackward = '\\' };

// Features whose first character is uppercase (CCGbank's X) are variables.
bool IsVariableFeature(std::string_view feature);

// The set of atomic category names, which of them may carry a feature, and
// the known feature values. Loaded with the grammar so that grammars with
// other atom inventories need no recompilation.
class AtomRegistry {
 public:
  AtomRegistry() = default;
  AtomRegistry(std::set<std::string> atoms, std::set<std::string> featured,
               std::set<std::string> features);

  // S, N, NP, PP, conj, comma, period, colon, semicolon, LRB, RRB; S/N/NP
  // take features; CCGbank feature values plus the variable X.
  static const AtomRegistry& Default();

  // Text form, one directive per line:
  //   atom NAME [featured]
  //   feature VALUE
  // '#' starts a comment line.
  static AtomRegistry Parse(std::string_view text);
  std::string Serialize() const;

  bool HasAtom(std::string_view name) const;
  bool TakesFeature(std::string_view name) const;
  bool HasFeature(std::string_view feature) const;

  const std::set<std::string>& atoms() const { return atoms_; }
  const std::set<std::string>& featured() const { return featured_; }
  const std::set<std::string>& features() const { return features_; }

 private:
  std::set<std::string, std::less<>> atoms_lookup_;
  std::set<std::string> atoms_;
  std::set<std::string> featured_;
  std::set<std::string> features_;
};

// Immutable recursive category. Cheap to copy (shared node). A
// default-constructed Category is empty and only useful as a placeholder.
class Category {
 public:
  Category() = default;

  static Category Atomic(std::string name, std::string feature = {});
  static Category Complex(const Category& result, Slash slash, const Category& argument);

  bool empty() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }

  bool is_atomic() const;
  bool is_complex() const { return !is_atomic(); }
  const std::string& name() const;
  const std::string& feature() const;
  Slash slash() const;
  const Category& result() const;
  const Category& argument() const;

  // Canonical text, e.g. "(S[dcl]\NP)/NP".
  const std::string& str() const;
  // Canonical text with every feature removed.
  const std::string& bare() const;
  // Number of nodes; the annotation arrays of dependency tracking are laid
  // out in preorder (node, result subtree, argument subtree).
  int size() const;

  // Modifier shape X|X once features are ignored.
  bool IsModifier() const;
  // Type-raised shape T|(T|A) once features are ignored.
  bool IsTypeRaised() const;

  Category StripFeatures() const;
  // Removes variable features only (S[X] -> S). Used for evaluation matching.
  Category EraseVariables() const;

  friend bool operator==(const Category& a, const Category& b);
  friend bool operator<(const Category& a, const Category& b) { return a.str() < b.str(); }

 private:
  struct Node;
  explicit Category(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Category::Node {
  bool atomic = true;
  std::string name;
  std::string feature;
  Slash slash = Slash::kForward;
  Category result;
  Category argument;
  std::string text;
  std::string bare;
  int size = 1;
};

inline bool Category::is_atomic() const { return node_->atomic; }
inline const std::string& Category::name() const { return node_->name; }
inline const std::string& Category::feature() const { return node_->feature; }
inline Slash Category::slash() const { return node_->slash; }
inline const Category& Category::result() const { return node_->result; }
inline const Category& Category::argument() const { return node_->argument; }
inline const std::string& Category::str() const { return node_->text; }
inline const std::string& Category::bare() const { return node_->bare; }
inline int Category::size() const { return node_->size; }

inline bool operator==(const Category& a, const Category& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->text == b.node_->text;
}

// True when both categories have the same shape, atom names and slashes.
inline bool SameIgnoringFeatures(const Category& a, const Category& b) {
  return a.bare() == b.bare();
}

// Throws FormatError on malformed brackets, unknown atoms, features on atoms
// that cannot carry one, or unknown feature values.
Category ParseCategory(std::string_view text,
                       const AtomRegistry& registry = AtomRegistry::Default());

// Same as Category::str(); kept as a free function for symmetry with parsing.
inline const std::string& PrintCategory(const Category& cat) { return cat.str(); }

// Variable instantiations produced by unification, separately for the
// variables of the left and right operand.
struct FeatureBinding {
  std::map<std::string, std::string> left;
  std::map<std::string, std::string> right;

  enum class Side { kLeft, kRight };
  Category Apply(const Category& cat, Side side) const;
  FeatureBinding Swapped() const { return {right, left}; }
  friend bool operator==(const FeatureBinding&, const FeatureBinding&) = default;
};

struct Unification {
  Category category;
  FeatureBinding binding;
};

// Succeeds iff a and b agree in shape, names and slashes, and every pair of
// atom features is compatible: equal, or one side unspecified, or one side
// a variable (consistently bound across the whole category). The result
// carries the more specific feature (concrete > variable > none).
std::optional<Unification> Unify(const Category& a, const Category& b);

// Fills unspecified or variable features of `target` with the features found
// at the same positions of `source`. Both must have the same bare shape.
Category LinkFeatures(const Category& target, const Category& source);

}  // namespace ccgbeam

#endif  // CCGBEAM_CATEGORY_HPP_
