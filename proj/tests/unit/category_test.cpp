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

#include <set>
#include <string>
#include <vector>

#include "ccgbeam/category.hpp"
#include "ccgbeam/corpus.hpp"
#include "ccgbeam/errors.hpp"
#include "test_data.hpp"

using namespace ccgbeam;

TEST_SUITE("category") {

TEST_CASE("parse builds the expected structure") {
  Category tv = ParseCategory("(S[dcl]\\NP)/NP");
  REQUIRE(tv.is_complex());
  CHECK(tv.slash() == Slash::kForward);
  CHECK(tv.argument() == Category::Atomic("NP"));
  CHECK(tv.result() ==
        Category::Complex(Category::Atomic("S", "dcl"), Slash::kBackward, Category::Atomic("NP")));
  CHECK(tv.size() == 5);

  Category np = ParseCategory("NP");
  CHECK(np.is_atomic());
  CHECK(np.name() == "NP");
  CHECK(np.feature().empty());

  Category which = ParseCategory("(NP\\NP)/(S[dcl]/NP)");
  CHECK(which.result().str() == "NP\\NP");
  CHECK(which.argument() == Category::Complex(Category::Atomic("S", "dcl"), Slash::kForward,
                                              Category::Atomic("NP")));
}

TEST_CASE("print gives the canonical form") {
  auto s_np = Category::Complex(Category::Atomic("S", "dcl"), Slash::kBackward,
                                Category::Atomic("NP"));
  CHECK(Category::Complex(s_np, Slash::kForward, Category::Atomic("NP")).str() ==
        "(S[dcl]\\NP)/NP");
  CHECK(PrintCategory(Category::Atomic("N")) == "N");
  auto s = Category::Atomic("S");
  auto raised = Category::Complex(
      s, Slash::kForward, Category::Complex(s, Slash::kBackward, Category::Atomic("NP")));
  CHECK(raised.str() == "S/(S\\NP)");
  CHECK(raised.IsTypeRaised());
  CHECK(ParseCategory("((S\\NP))").str() == "S\\NP");
  CHECK(ParseCategory("S[dcl]/NP").bare() == "S/NP");
}

TEST_CASE("malformed categories are rejected") {
  for (const char* bad : {"", "(NP", "NP)", "NP/", "/NP", "XYZ", "PP[dcl]", "S[nope]", "S[dcl",
                          "NP NP", "()", "S|NP"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseCategory(bad), FormatError);
  }
}

TEST_CASE("unify examples") {
  auto r = Unify(ParseCategory("S[dcl]"), ParseCategory("S"));
  REQUIRE(r);
  CHECK(r->category.str() == "S[dcl]");
  CHECK_FALSE(Unify(ParseCategory("S[dcl]"), ParseCategory("S[b]")));
  r = Unify(ParseCategory("S[X]\\NP"), ParseCategory("S[dcl]\\NP"));
  REQUIRE(r);
  CHECK(r->category.str() == "S[dcl]\\NP");
  CHECK(r->binding.left.at("X") == "dcl");
  CHECK(r->binding.right.empty());
  CHECK_FALSE(Unify(ParseCategory("S/NP"), ParseCategory("S\\NP")));
  CHECK_FALSE(Unify(ParseCategory("NP"), ParseCategory("N")));
  // One variable, bound consistently across the category.
  CHECK_FALSE(Unify(ParseCategory("S[X]/S[X]"), ParseCategory("S[dcl]/S[b]")));
  r = Unify(ParseCategory("S[X]/S[X]"), ParseCategory("S[dcl]/S"));
  REQUIRE(r);
  CHECK(r->category.str() == "S[dcl]/S[dcl]");
}

// Oracle for a single atom: the rule stated over the feature lattice
// none < variable < concrete.
std::optional<std::string> ExpectedFeature(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& f) { return f.empty() ? 0 : IsVariableFeature(f) ? 1 : 2; };
  if (rank(a) == 2 && rank(b) == 2) {
    if (a != b) return std::nullopt;
    return a;
  }
  return rank(a) >= rank(b) ? a : b;
}

TEST_CASE("unify agrees with the feature lattice on every feature pair") {
  std::vector<std::string> features = {""};
  for (const auto& f : AtomRegistry::Default().features()) features.push_back(f);
  for (const char* atom : {"S", "NP", "N"}) {
    for (const auto& fa : features) {
      for (const auto& fb : features) {
        CAPTURE(fa);
        CAPTURE(fb);
        auto a = Category::Atomic(atom, fa);
        auto b = Category::Atomic(atom, fb);
        auto expected = ExpectedFeature(fa, fb);
        auto got = Unify(a, b);
        REQUIRE(got.has_value() == expected.has_value());
        if (!got) continue;
        CHECK(got->category.feature() == *expected);
        // Inside a functor the outcome is the same.
        auto fa_cat = Category::Complex(a, Slash::kBackward, Category::Atomic("NP"));
        auto fb_cat = Category::Complex(b, Slash::kBackward, Category::Atomic("NP"));
        auto inner = Unify(fa_cat, fb_cat);
        REQUIRE(inner);
        CHECK(inner->category.result().feature() == *expected);
        if (IsVariableFeature(fa) && !fb.empty() && !IsVariableFeature(fb)) {
          CHECK(inner->binding.left.at(fa) == fb);
        }
      }
    }
  }
}

TEST_CASE("round trip, self-unification and commutativity over the mini-treebank") {
  auto entries = LoadTreebank(testdata::MiniTreebank());
  std::set<std::string> seen;
  std::vector<Category> cats;
  std::vector<const Tree*> stack;
  for (const auto& e : entries) {
    stack.push_back(&e.tree);
    while (!stack.empty()) {
      const Tree* t = stack.back();
      stack.pop_back();
      if (seen.insert(t->category.str()).second) cats.push_back(t->category);
      for (const auto& c : t->children) stack.push_back(&c);
    }
  }
  REQUIRE(cats.size() > 20);
  for (const auto& c : cats) {
    CAPTURE(c.str());
    Category again = ParseCategory(PrintCategory(c));
    CHECK(again == c);
    CHECK(ParseCategory(PrintCategory(again)).str() == c.str());
    auto self = Unify(c, c);
    REQUIRE(self);
    CHECK(self->category == c);
  }
  for (const auto& a : cats) {
    for (const auto& b : cats) {
      auto ab = Unify(a, b);
      auto ba = Unify(b, a);
      REQUIRE(ab.has_value() == ba.has_value());
      if (!ab) continue;
      CHECK(ab->category == ba->category);
      CHECK(ab->binding == ba->binding.Swapped());
    }
  }
}

TEST_CASE("binding application is idempotent") {
  auto r = Unify(ParseCategory("(S[X]\\NP)/(S[X]\\NP)"), ParseCategory("(S[dcl]\\NP)/(S\\NP)"));
  REQUIRE(r);
  auto once = r->binding.Apply(ParseCategory("S[X]/NP"), FeatureBinding::Side::kLeft);
  CHECK(once.str() == "S[dcl]/NP");
  CHECK(r->binding.Apply(once, FeatureBinding::Side::kLeft) == once);
}

TEST_CASE("shape predicates and feature helpers") {
  CHECK(ParseCategory("(S\\NP)\\(S\\NP)").IsModifier());
  CHECK(ParseCategory("N/N").IsModifier());
  CHECK(ParseCategory("(S[dcl]\\NP)/(S[b]\\NP)").IsModifier());
  CHECK_FALSE(ParseCategory("(S[dcl]\\NP)/NP").IsModifier());
  CHECK_FALSE(ParseCategory("NP").IsModifier());
  CHECK(ParseCategory("S/(S\\NP)").IsTypeRaised());
  CHECK_FALSE(ParseCategory("S/(NP\\NP)").IsTypeRaised());
  CHECK(ParseCategory("S[X]\\NP[nb]").EraseVariables().str() == "S\\NP[nb]");
  CHECK(ParseCategory("S[dcl]\\NP[nb]").StripFeatures().str() == "S\\NP");
  CHECK(LinkFeatures(ParseCategory("S\\NP"), ParseCategory("S[dcl]\\NP")).str() == "S[dcl]\\NP");
  CHECK(LinkFeatures(ParseCategory("S[b]\\NP"), ParseCategory("S[dcl]\\NP")).str() ==
        "S[b]\\NP");
}

TEST_CASE("atom registry is configuration") {
  auto reg = AtomRegistry::Parse("# toy\natom A featured\natom B\nfeature f\n");
  CHECK(ParseCategory("A[f]/B", reg).str() == "A[f]/B");
  CHECK_THROWS_AS(ParseCategory("NP", reg), FormatError);
  CHECK_THROWS_AS(ParseCategory("B[f]", reg), FormatError);
  auto again = AtomRegistry::Parse(reg.Serialize());
  CHECK(again.atoms() == reg.atoms());
  CHECK(again.featured() == reg.featured());
  CHECK(again.features() == reg.features());
  CHECK_THROWS_AS(AtomRegistry::Parse("atom\n"), FormatError);
}

}  // TEST_SUITE
