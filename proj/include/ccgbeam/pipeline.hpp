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

// Corpus-level parsing across worker threads and the beam-width bench.

#ifndef CCGBEAM_PIPELINE_HPP_
#define CCGBEAM_PIPELINE_HPP_

#include <string>
#include <vector>

#include "ccgbeam/chart.hpp"
#include "ccgbeam/eval.hpp"
#include "ccgbeam/multitag.hpp"
#include "ccgbeam/score.hpp"

namespace ccgbeam {

struct ParseOptions {
  PruneConfig prune;
  // Tried in order, re-pruning with each gamma, while the parse is skimmed.
  // Empty (the default) disables retries.
  std::vector<double> retry_gammas;
  DecodeConfig decode;
  ScoreConfig score;
  int workers = 1;
};

struct CorpusReport {
  std::vector<ParseResult> results;
  double seconds = 0.0;
  double sentences_per_second = 0.0;
  double percent_skimmed = 0.0;
  double coverage = 0.0;
};

// Prunes, decodes and collects every sentence. `charts` may be null, in
// which case labels are scored by relative frequency in the grammar. Throws
// AlignmentError when the charts do not line up with the sentences.
CorpusReport ParseCorpus(const std::vector<TaggedSentence>& sentences,
                         const std::vector<ScoreChart>* charts, const Grammar& grammar,
                         const ParseOptions& options);

SentenceDeps ToSentenceDeps(const ParseResult& result);
std::string FormatDerivations(const std::vector<ParseResult>& results);

struct BenchRow {
  int beam = 0;
  double f = 0.0;
  double sentences_per_second = 0.0;
  double percent_skimmed = 0.0;
};

std::vector<BenchRow> Bench(const std::vector<TaggedSentence>& sentences,
                            const std::vector<ScoreChart>* charts, const Grammar& grammar,
                            const std::vector<SentenceDeps>& gold, const std::vector<int>& beams,
                            ParseOptions options);
std::string FormatBench(const std::vector<BenchRow>& rows);

}  // namespace ccgbeam

#endif  // CCGBEAM_PIPELINE_HPP_
