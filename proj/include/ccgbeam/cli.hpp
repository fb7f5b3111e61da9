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

#ifndef CCGBEAM_CLI_HPP_
#define CCGBEAM_CLI_HPP_

#include <iosfwd>

namespace ccgbeam {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kGrammarFormatVersion = 1;

enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFormat = 2,
  kExitAlignment = 3,
  kExitInternal = 4,
  kExitIo = 5,
};

// Subcommands: extract-grammar, parse, evaluate, prune-tags, oracle, bench.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccgbeam

#endif  // CCGBEAM_CLI_HPP_
