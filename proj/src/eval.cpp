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

#include "ccgbeam/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <tuple>

#include "ccgbeam/errors.hpp"
#include "text_io.hpp"

namespace ccgbeam {
namespace {

// Drops variable features ("[X]") from a category string.
std::string EraseVariableFeatures(const std::string& cat) {
  std::string out;
  out.reserve(cat.size());
  for (size_t i = 0; i < cat.size(); ++i) {
    if (cat[i] == '[' && i + 1 < cat.size() && std::isupper(static_cast<unsigned char>(cat[i + 1]))) {
      const size_t close = cat.find(']', i);
      if (close != std::string::npos) {
        i = close;
        continue;
      }
    }
    out += cat[i];
  }
  return out;
}

using Key = std::tuple<int, std::string, int, int>;

std::map<Key, long> Multiset(const std::vector<Dependency>& deps) {
  std::map<Key, long> out;
  for (const auto& d : deps) ++out[{d.head, EraseVariableFeatures(d.category), d.slot, d.argument}];
  return out;
}

long Overlap(const std::map<Key, long>& a, const std::map<Key, long>& b) {
  long n = 0;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    if (it != b.end()) n += std::min(count, it->second);
  }
  return n;
}

double Percent(long num, long den) {
  return den > 0 ? 100.0 * static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

void CheckAligned(const std::vector<SentenceDeps>& gold, const std::vector<SentenceDeps>& test) {
  if (gold.size() != test.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) + " sentences, test has " +
                         std::to_string(test.size()));
  }
}

}  // namespace

double FScore(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

std::vector<SentenceDeps> ParseDepsFile(std::string_view text) {
  std::vector<SentenceDeps> out;
  bool open = false;
  const auto lines = detail::Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    const std::string& line = lines[i];
    if (line.empty()) {
      open = false;
      continue;
    }
    if (!open) {
      out.emplace_back();
      open = true;
    }
    SentenceDeps& s = out.back();
    if (line == "# unparsed") {
      s.parsed = false;
    } else if (line == "# skimmed") {
      s.skimmed = true;
    } else if (line.rfind("# cats", 0) == 0) {
      const size_t tab = line.find('\t');
      s.categories = tab == std::string::npos ? std::vector<std::string>{}
                                              : detail::Tokens(line.substr(tab + 1));
    } else if (line[0] == '#') {
      continue;
    } else {
      const auto f = detail::Split(line, '\t');
      if (f.size() != 5) throw FormatError("expected 5 tab-separated fields", line_no);
      Dependency d;
      d.head = static_cast<int>(detail::ParseLong(f[0], line_no));
      d.category = f[1];
      d.slot = static_cast<int>(detail::ParseLong(f[2], line_no));
      d.argument = static_cast<int>(detail::ParseLong(f[3], line_no));
      if (f[4] != "0" && f[4] != "1") throw FormatError("long-range flag must be 0 or 1", line_no);
      d.long_range = f[4] == "1";
      s.deps.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<SentenceDeps> LoadDepsFile(const std::string& path) {
  return ParseDepsFile(detail::ReadFile(path));
}

std::string FormatDepsFile(const std::vector<SentenceDeps>& sentences) {
  std::string out;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += "\n";
    const auto& s = sentences[i];
    if (!s.parsed) {
      out += "# unparsed\n";
      continue;
    }
    out += "# cats\t";
    for (size_t t = 0; t < s.categories.size(); ++t) {
      if (t > 0) out += ' ';
      out += s.categories[t];
    }
    out += "\n";
    if (s.skimmed) out += "# skimmed\n";
    for (const auto& d : s.deps) {
      out += std::to_string(d.head) + "\t" + d.category + "\t" + std::to_string(d.slot) + "\t" +
             std::to_string(d.argument) + "\t" + (d.long_range ? "1" : "0") + "\n";
    }
  }
  return out;
}

EvalReport Evaluate(const std::vector<SentenceDeps>& gold, const std::vector<SentenceDeps>& test) {
  CheckAligned(gold, test);
  EvalReport r;
  long correct_sentences = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const auto& g = gold[i];
    const auto& t = test[i];
    ++r.sentences;
    r.tokens += static_cast<long>(g.categories.size());
    r.gold_deps += static_cast<long>(g.deps.size());
    if (!t.parsed) continue;
    if (t.categories.size() != g.categories.size()) {
      throw AlignmentError("sentence " + std::to_string(i) + ": gold has " +
                           std::to_string(g.categories.size()) + " tokens, test has " +
                           std::to_string(t.categories.size()));
    }
    ++r.parsed;
    if (t.skimmed) ++r.skimmed;
    for (size_t k = 0; k < g.categories.size(); ++k) {
      r.correct_tokens += EraseVariableFeatures(g.categories[k]) ==
                          EraseVariableFeatures(t.categories[k]);
    }
    const auto gm = Multiset(g.deps);
    const auto tm = Multiset(t.deps);
    r.test_deps += static_cast<long>(t.deps.size());
    r.matched += Overlap(gm, tm);
    correct_sentences += gm == tm;
  }
  r.precision = Percent(r.matched, r.test_deps);
  r.recall = Percent(r.matched, r.gold_deps);
  r.f = FScore(r.precision, r.recall);
  r.category_accuracy = Percent(r.correct_tokens, r.tokens);
  r.coverage = Percent(r.parsed, r.sentences);
  r.sentence_accuracy = Percent(correct_sentences, r.sentences);
  return r;
}

std::vector<RelationRow> PerRelation(const std::vector<SentenceDeps>& gold,
                                     const std::vector<SentenceDeps>& test,
                                     const MarkedupTable* markedup) {
  CheckAligned(gold, test);
  std::map<std::pair<std::string, int>, RelationRow> rows;
  std::map<std::pair<std::string, int>, std::string> raw_category;
  for (size_t i = 0; i < gold.size(); ++i) {
    const auto gm = Multiset(gold[i].deps);
    const auto tm = test[i].parsed ? Multiset(test[i].deps) : std::map<Key, long>{};
    auto row_for = [&](const Key& key) -> RelationRow& {
      auto& row = rows[{std::get<1>(key), std::get<2>(key)}];
      row.category = std::get<1>(key);
      row.slot = std::get<2>(key);
      return row;
    };
    for (const auto& [key, count] : gm) {
      auto& row = row_for(key);
      row.gold += count;
      auto it = tm.find(key);
      if (it != tm.end()) row.matched += std::min(count, it->second);
    }
    for (const auto& [key, count] : tm) row_for(key).test += count;
    for (const auto& d : gold[i].deps) {
      raw_category.emplace(std::pair{EraseVariableFeatures(d.category), d.slot}, d.category);
    }
  }
  std::vector<RelationRow> out;
  for (auto& [key, row] : rows) {
    row.precision = Percent(row.matched, row.test);
    row.recall = Percent(row.matched, row.gold);
    row.f = FScore(row.precision, row.recall);
    if (markedup != nullptr) {
      row.relation = markedup->RelationName(row.category, row.slot);
      auto raw = raw_category.find(key);
      if (row.relation.empty() && raw != raw_category.end()) {
        row.relation = markedup->RelationName(raw->second, row.slot);
      }
    }
    out.push_back(std::move(row));
  }
  std::stable_sort(out.begin(), out.end(), [](const RelationRow& a, const RelationRow& b) {
    return a.gold > b.gold;
  });
  return out;
}

std::string FormatReport(const EvalReport& r) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%7s %7s %7s %7s %7s %7s\n", "P", "R", "F", "Cat", "Cov.",
                "Sent.");
  out += buf;
  std::snprintf(buf, sizeof buf, "%7.1f %7.1f %7.1f %7.1f %7.1f %7.1f\n", r.precision, r.recall,
                r.f, r.category_accuracy, r.coverage, r.sentence_accuracy);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "sentences %ld  parsed %ld  skimmed %ld  gold deps %ld  test deps %ld  matched %ld\n",
                r.sentences, r.parsed, r.skimmed, r.gold_deps, r.test_deps, r.matched);
  out += buf;
  return out;
}

std::string FormatRelations(const std::vector<RelationRow>& rows) {
  size_t width = 8;
  for (const auto& row : rows) width = std::max(width, row.category.size());
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s %4s  %-24s %7s %7s\n", static_cast<int>(width), "Category",
                "Slot", "Relation", "#Deps", "F");
  out += buf;
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%-*s %4d  %-24s %7ld %7.1f\n", static_cast<int>(width),
                  row.category.c_str(), row.slot, row.relation.c_str(), row.gold, row.f);
    out += buf;
  }
  return out;
}

}  // namespace ccgbeam
