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

#ifndef CCGBEAM_ERRORS_HPP_
#define CCGBEAM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ccgbeam {

// Malformed input text: categories, markedup entries, treebank trees, tag
// files, score charts, dependency files. `line` is 1-based, 0 if unknown.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        message_(what),
        line_(line) {}
  int line() const { return line_; }
  // The message without the line prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
};

// Parallel inputs (tags, charts, gold files) disagree on sentence or token counts.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccgbeam

#endif  // CCGBEAM_ERRORS_HPP_
