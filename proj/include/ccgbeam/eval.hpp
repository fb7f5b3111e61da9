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

// Labelled dependency evaluation.
//
// Dependency file, one block per sentence, blocks separated by blank lines:
//   # cats TAB cat cat ...            lexical category per token
//   # skimmed                         optional; analysis is a fragment sequence
//   head TAB category TAB slot TAB arg TAB long-range(0|1)
// A block consisting of "# unparsed" marks a sentence with no analysis.

#ifndef CCGBEAM_EVAL_HPP_
#define CCGBEAM_EVAL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ccgbeam/markedup.hpp"

namespace ccgbeam {

struct SentenceDeps {
  bool parsed = true;
  bool skimmed = false;
  std::vector<std::string> categories;
  std::vector<Dependency> deps;
};

std::vector<SentenceDeps> ParseDepsFile(std::string_view text);
std::vector<SentenceDeps> LoadDepsFile(const std::string& path);
std::string FormatDepsFile(const std::vector<SentenceDeps>& sentences);

struct RelationRow {
  std::string category;  // variables erased
  int slot = 0;
  std::string relation;
  long gold = 0;
  long test = 0;
  long matched = 0;
  double precision = 0.0, recall = 0.0, f = 0.0;
};

struct EvalReport {
  double precision = 0.0, recall = 0.0, f = 0.0;  // percentages
  double category_accuracy = 0.0;
  double coverage = 0.0;
  double sentence_accuracy = 0.0;
  long gold_deps = 0, test_deps = 0, matched = 0;
  long sentences = 0, parsed = 0, skimmed = 0, tokens = 0, correct_tokens = 0;
};

// Throws AlignmentError when sentence or token counts differ.
EvalReport Evaluate(const std::vector<SentenceDeps>& gold, const std::vector<SentenceDeps>& test);

// Rows keyed by (category, slot), ordered by descending gold count then key.
// Keys with neither gold nor test dependencies do not appear.
std::vector<RelationRow> PerRelation(const std::vector<SentenceDeps>& gold,
                                     const std::vector<SentenceDeps>& test,
                                     const MarkedupTable* markedup = nullptr);

std::string FormatReport(const EvalReport& report);
std::string FormatRelations(const std::vector<RelationRow>& rows);

// F = 2PR / (P + R), 0 when P + R = 0.
double FScore(double precision, double recall);

}  // namespace ccgbeam

#endif  // CCGBEAM_EVAL_HPP_
