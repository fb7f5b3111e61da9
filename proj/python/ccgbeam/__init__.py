# Copyright 2026 The ccgbeam Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Grammar-constrained CCG chart parser."""

from ._core import (
    GRAMMAR_FORMAT_VERSION,
    AlignmentError,
    Dependency,
    FormatError,
    Grammar,
    IoError,
    __version__,
    decode,
    evaluate,
    gold_oracle,
    parse_category,
    prune,
    run_cli,
    unify,
)

__all__ = [
    "GRAMMAR_FORMAT_VERSION",
    "AlignmentError",
    "Dependency",
    "FormatError",
    "Grammar",
    "IoError",
    "__version__",
    "decode",
    "evaluate",
    "gold_oracle",
    "parse_category",
    "prune",
    "run_cli",
    "unify",
]
