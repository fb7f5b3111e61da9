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

#include <string>

#include "ccgbeam/errors.hpp"
#include "ccgbeam/markedup.hpp"
#include "test_data.hpp"

using namespace ccgbeam;

TEST_SUITE("markedup") {

TEST_CASE("transitive verb entry") {
  auto a = ParseAnnotated("(S[dcl]\\NP{1}:Y)/NP{2}:Z");
  CHECK(a.num_slots == 2);
  CHECK(a.category.str() == "(S[dcl]\\NP)/NP");
  auto offsets = a.SlotOffsets();
  REQUIRE(offsets.size() == 3);
  // Preorder: /, S[dcl]\NP, S[dcl], NP (subject), NP (object).
  CHECK(offsets[1] == 3);
  CHECK(offsets[2] == 4);
  CHECK(a.nodes[3].var == "Y");
  CHECK(a.nodes[4].var == "Z");
  CHECK(a.nodes[0].var == std::string(kSelfVariable));
  CHECK(a.nodes[2].var == std::string(kSelfVariable));
}

TEST_CASE("atomic entry has no slots") {
  auto a = ParseAnnotated("N");
  CHECK(a.num_slots == 0);
  CHECK(a.nodes.size() == 1);
  CHECK(a.nodes[0].var == std::string(kSelfVariable));
}

TEST_CASE("object relative pronoun entry") {
  auto a = ParseAnnotated("(NP{Y}\\NP{1}:Y)/(S[dcl]{2}:Z/NP{Y*})");
  CHECK(a.num_slots == 2);
  // Preorder: /, NP\NP, NP, NP, S[dcl]/NP, S[dcl], NP.
  REQUIRE(a.nodes.size() == 7);
  auto offsets = a.SlotOffsets();
  CHECK(offsets[1] == 3);
  CHECK(offsets[2] == 5);
  CHECK(a.nodes[2].var == "Y");
  CHECK(a.nodes[3].var == "Y");
  CHECK(a.nodes[5].var == "Z");
  CHECK(a.nodes[6].var == "Y");
  CHECK(a.nodes[6].long_range);
  CHECK_FALSE(a.nodes[3].long_range);
  // The result half NP\NP shares the head of its result NP.
  CHECK(a.nodes[1].var == "Y");
}

TEST_CASE("annotation text round-trips") {
  for (const char* text : {"(S[dcl]\\NP{1}:Y)/NP{2}:Z", "(NP{Y}\\NP{1}:Y)/(S[dcl]{2}:Z/NP{Y*})",
                           "N/N{1}", "NP/(S[dcl]{1}/NP{_*})", "((S{Y}\\NP{Z})\\(S{Y}{1}\\NP{Z}))/NP{2}"}) {
    CAPTURE(text);
    auto a = ParseAnnotated(text);
    auto b = ParseAnnotated(a.ToString());
    CHECK(b.ToString() == a.ToString());
    CHECK(b.category == a.category);
    CHECK(b.num_slots == a.num_slots);
  }
}

TEST_CASE("default annotation") {
  // Compared against the hand annotation of the same category.
  auto hand = ParseAnnotated("(S[dcl]\\NP{1})/NP{2}");
  auto def = DefaultAnnotation(hand.category);
  CHECK(def.num_slots == 2);
  CHECK(def.SlotOffsets() == hand.SlotOffsets());
  CHECK(def.ToString() == hand.ToString());

  CHECK(DefaultAnnotation(ParseCategory("NP")).num_slots == 0);

  // Outermost argument first: slot 1 sits on the (N/N) argument node.
  auto mm = DefaultAnnotation(ParseCategory("(N/N)/(N/N)"));
  REQUIRE(mm.num_slots == 1);
  CHECK(mm.SlotOffsets()[1] == 4);

  auto ditrans = DefaultAnnotation(ParseCategory("((S[dcl]\\NP)/NP)/NP"));
  CHECK(ditrans.num_slots == 3);
  CHECK(ditrans.SlotOffsets() == std::vector<int>{-1, 4, 5, 6});
  for (const auto& node : ditrans.nodes) CHECK_FALSE(node.long_range);
}

TEST_CASE("table parsing and errors") {
  auto t = MarkedupTable::Parse(
      "# comment\n"
      "(S[dcl]\\NP{1}:Y)/NP{2}:Z\ttransitive verb\ttransitive verb\n"
      "N/N{1}\n");
  CHECK(t.entries().size() == 2);
  CHECK(t.Contains("(S[dcl]\\NP)/NP"));
  CHECK(t.RelationName("(S[dcl]\\NP)/NP", 2) == "transitive verb");
  CHECK(t.RelationName("N/N", 1).empty());
  CHECK(t.Resolve(ParseCategory("(S[dcl]\\NP)/NP")).nodes[3].var == "Y");
  CHECK(t.Resolve(ParseCategory("PP/NP")).num_slots == 1);

  auto line_of = [](const char* text) {
    try {
      MarkedupTable::Parse(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("N/N{1}\n(S\\NP{1}\n") == 2);
  CHECK(line_of("N/N{1}\nNP\nN/N{1}\n") == 3);
  CHECK(line_of("NP/(S[dcl]{1}/NP{W*})\n") == 1);  // W occurs nowhere unstarred
  CHECK(line_of("(S\\NP{1})/NP{1}\n") == 1);
  CHECK(line_of("(S\\NP{1})/NP{3}\n") == 1);
}

TEST_CASE("bundled markedup file loads and resolves every entry") {
  auto t = MarkedupTable::Load(testdata::MiniMarkedup());
  CHECK(t.entries().size() >= 20);
  for (const auto& [key, entry] : t.entries()) {
    CAPTURE(key);
    CHECK(entry.annotated.category.str() == key);
    CHECK(static_cast<int>(entry.relations.size()) <= entry.annotated.num_slots);
  }
  CHECK(t.RelationName("(NP\\NP)/(S[dcl]/NP)", 2) == "object rel pronoun");
  CHECK_THROWS_AS(MarkedupTable::Load("/nonexistent/markedup.txt"), IoError);
}

}  // TEST_SUITE
