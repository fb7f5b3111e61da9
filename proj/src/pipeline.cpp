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

#include "ccgbeam/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "ccgbeam/errors.hpp"

namespace ccgbeam {
namespace {

ParseResult ParseOne(const TaggedSentence& sentence, const LabelScorer& scorer,
                     const Grammar& grammar, const ParseOptions& options) {
  std::vector<std::string> words;
  for (const auto& t : sentence) words.push_back(t.word);
  auto run = [&](const PruneConfig& prune) {
    std::vector<std::vector<TagEntry>> tags;
    for (const auto& t : sentence) tags.push_back(Prune(t, prune));
    return Decode(words, tags, grammar, scorer, options.decode, options.score);
  };
  ParseResult result = run(options.prune);
  for (double gamma : options.retry_gammas) {
    if (!result.skimmed) break;
    PruneConfig retry = options.prune;
    retry.gamma = gamma;
    ParseResult again = run(retry);
    if (!again.skimmed) result = std::move(again);
  }
  return result;
}

}  // namespace

CorpusReport ParseCorpus(const std::vector<TaggedSentence>& sentences,
                         const std::vector<ScoreChart>* charts, const Grammar& grammar,
                         const ParseOptions& options) {
  options.prune.Validate();
  options.decode.Validate();
  options.score.Validate();
  if (charts != nullptr) {
    if (charts->size() != sentences.size()) {
      throw AlignmentError("score file has " + std::to_string(charts->size()) +
                           " sentences, tag file has " + std::to_string(sentences.size()));
    }
    for (size_t i = 0; i < sentences.size(); ++i) {
      if ((*charts)[i].length() != static_cast<int>(sentences[i].size())) {
        throw AlignmentError("sentence " + std::to_string(i) + ": score chart length " +
                             std::to_string((*charts)[i].length()) + ", " +
                             std::to_string(sentences[i].size()) + " tokens");
      }
    }
  }
  const FrequencyScorer frequency(grammar.tables);

  CorpusReport report;
  report.results.resize(sentences.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= sentences.size()) return;
      try {
        const LabelScorer& scorer =
            charts != nullptr ? static_cast<const LabelScorer&>((*charts)[i]) : frequency;
        report.results[i] = ParseOne(sentences[i], scorer, grammar, options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(sentences.size());
      }
    }
  };

  const auto start = std::chrono::steady_clock::now();
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(sentences.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!sentences.empty()) {
    long skimmed = 0;
    for (const auto& r : report.results) skimmed += r.skimmed;
    const double n = static_cast<double>(sentences.size());
    report.percent_skimmed = 100.0 * static_cast<double>(skimmed) / n;
    report.coverage = 100.0;  // the skimmer always returns an analysis
    report.sentences_per_second = report.seconds > 0.0 ? n / report.seconds : 0.0;
  }
  return report;
}

SentenceDeps ToSentenceDeps(const ParseResult& result) {
  SentenceDeps out;
  out.parsed = !result.trees.empty();
  out.skimmed = result.skimmed;
  out.categories = result.categories;
  out.deps = result.deps;
  return out;
}

std::string FormatDerivations(const std::vector<ParseResult>& results) {
  std::string out;
  for (size_t i = 0; i < results.size(); ++i) {
    out += "# id: " + std::to_string(i + 1);
    if (results[i].skimmed) out += " skimmed";
    out += "\n";
    for (const auto& tree : results[i].trees) out += FormatTree(tree) + "\n";
  }
  return out;
}

std::vector<BenchRow> Bench(const std::vector<TaggedSentence>& sentences,
                            const std::vector<ScoreChart>* charts, const Grammar& grammar,
                            const std::vector<SentenceDeps>& gold, const std::vector<int>& beams,
                            ParseOptions options) {
  std::vector<BenchRow> rows;
  for (int beam : beams) {
    options.decode.beam = beam;
    CorpusReport report = ParseCorpus(sentences, charts, grammar, options);
    std::vector<SentenceDeps> test;
    for (const auto& r : report.results) test.push_back(ToSentenceDeps(r));
    rows.push_back({beam, Evaluate(gold, test).f, report.sentences_per_second,
                    report.percent_skimmed});
  }
  return rows;
}

std::string FormatBench(const std::vector<BenchRow>& rows) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%6s %7s %12s %10s\n", "Beam", "F", "Sents/sec", "%Skimmed");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%6d %7.1f %12.1f %10.1f\n", r.beam, r.f,
                  r.sentences_per_second, r.percent_skimmed);
    out += buf;
  }
  return out;
}

}  // namespace ccgbeam
