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

#include "ccgbeam/score.hpp"

#include <cmath>
#include <stdexcept>

#include "ccgbeam/errors.hpp"
#include "text_io.hpp"

namespace ccgbeam {

void ScoreConfig::Validate() const {
  if (!std::isfinite(w_st) || !std::isfinite(w_sp) || !std::isfinite(missing)) {
    throw std::invalid_argument("score weights and default must be finite");
  }
}

std::string EncodeChain(const std::vector<std::string>& categories) {
  std::string out;
  for (size_t i = 0; i < categories.size(); ++i) {
    if (i > 0) out += kChainSeparator;
    out += categories[i];
  }
  return out;
}

std::vector<std::string> DecodeChain(std::string_view label) {
  return detail::Split(label, kChainSeparator);
}

void ScoreChart::Add(int start, int end, const std::string& label, double score) {
  if (start < 0 || start >= end || end > length_) {
    throw FormatError("span " + std::to_string(start) + " " + std::to_string(end) +
                      " outside sentence of length " + std::to_string(length_));
  }
  if (!entries_[{start, end}].emplace(label, score).second) {
    throw FormatError("duplicate entry for " + std::to_string(start) + " " +
                      std::to_string(end) + " " + label);
  }
}

std::optional<double> ScoreChart::Lookup(int start, int end, const std::string& label) const {
  auto cell = entries_.find({start, end});
  if (cell == entries_.end()) return std::nullopt;
  auto it = cell->second.find(label);
  if (it == cell->second.end()) return std::nullopt;
  return it->second;
}

std::vector<ScoreChart> ParseScoreCharts(std::string_view text) {
  std::vector<ScoreChart> charts;
  bool open = false;
  const auto lines = detail::Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    const auto fields = detail::Tokens(lines[i]);
    if (fields.empty()) {
      open = false;
      continue;
    }
    if (!open) {
      if (fields.size() != 2 || fields[0] != "n") {
        throw FormatError("expected header 'n LENGTH'", line_no);
      }
      const long n = detail::ParseLong(fields[1], line_no);
      if (n < 1) throw FormatError("sentence length must be positive", line_no);
      charts.emplace_back(static_cast<int>(n));
      open = true;
      continue;
    }
    if (fields.size() != 4) throw FormatError("expected 'start end label score'", line_no);
    const long start = detail::ParseLong(fields[0], line_no);
    const long end = detail::ParseLong(fields[1], line_no);
    const double score = detail::ParseDouble(fields[3], line_no);
    try {
      charts.back().Add(static_cast<int>(start), static_cast<int>(end), fields[2], score);
    } catch (const FormatError& e) {
      throw FormatError(e.message(), line_no);
    }
  }
  return charts;
}

std::vector<ScoreChart> LoadScoreCharts(const std::string& path) {
  return ParseScoreCharts(detail::ReadFile(path));
}

std::string FormatScoreCharts(const std::vector<ScoreChart>& charts) {
  std::string out;
  for (size_t c = 0; c < charts.size(); ++c) {
    if (c > 0) out += "\n";
    out += "n " + std::to_string(charts[c].length()) + "\n";
    for (const auto& [span, labels] : charts[c].entries()) {
      for (const auto& [label, score] : labels) {
        out += std::to_string(span.first) + " " + std::to_string(span.second) + " " + label +
               " " + detail::FormatDouble(score) + "\n";
      }
    }
  }
  return out;
}

FrequencyScorer::FrequencyScorer(const GrammarTables& tables) {
  for (const auto& [pair, rules] : tables.binary) {
    for (const auto& r : rules) counts_[r.result.str()] += r.count;
  }
  for (const auto& [source, rules] : tables.unary) {
    for (const auto& r : rules) counts_[r.target.str()] += r.count;
  }
  total_ = tables.TotalBinaryCount() + tables.TotalUnaryCount();
}

std::optional<double> FrequencyScorer::Lookup(int, int, const std::string& label) const {
  const size_t bar = label.rfind(kChainSeparator);
  const std::string top = bar == std::string::npos ? label : label.substr(bar + 1);
  auto it = counts_.find(top);
  if (it == counts_.end() || total_ <= 0) return std::nullopt;
  return std::log(static_cast<double>(it->second) / static_cast<double>(total_));
}

std::string SpanLabel(const Tree& top) {
  std::vector<std::string> chain;
  const Tree* node = &top;
  while (IsUnaryKind(node->kind)) {
    chain.push_back(node->category.str());
    node = &node->children.front();
  }
  chain.push_back(node->category.str());
  return EncodeChain({chain.rbegin(), chain.rend()});
}

namespace {

double FlatScoreNode(const Tree& top, const std::vector<double>& leaf_log_probs,
                     const LabelScorer& scorer, const ScoreConfig& cfg) {
  const Tree* base = &top;
  while (IsUnaryKind(base->kind)) base = &base->children.front();
  const int start = base->start(), end = base->end();
  double total = 0.0;
  if (base->is_leaf()) {
    total += cfg.w_st * leaf_log_probs.at(base->index);
    if (base != &top) total += cfg.w_sp * scorer.Score(start, end, SpanLabel(top), cfg);
    return total;
  }
  total += cfg.w_sp * scorer.Score(start, end, SpanLabel(top), cfg);
  for (const auto& child : base->children) {
    total += FlatScoreNode(child, leaf_log_probs, scorer, cfg);
  }
  return total;
}

}  // namespace

double FlatScore(const Tree& tree, const std::vector<double>& leaf_log_probs,
                 const LabelScorer& scorer, const ScoreConfig& cfg) {
  return FlatScoreNode(tree, leaf_log_probs, scorer, cfg);
}

}  // namespace ccgbeam
