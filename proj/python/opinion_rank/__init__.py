# Copyright 2026 The opinion-rank Authors
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

"""Python bindings for the opinion-rank C++ library."""

from ._orank import (
    CrfModel,
    DomainError,
    EmptyQueryError,
    FormatError,
    FuzzyConfig,
    Index,
    Lexicon,
    OrankError,
    ParseError,
    Pipeline,
    TrainingDivergenceError,
    UnmatchedQueryError,
    assess,
    bm25_term,
    evaluate,
    query,
    strength,
    train_crf,
)

__all__ = [
    "CrfModel",
    "DomainError",
    "EmptyQueryError",
    "FormatError",
    "FuzzyConfig",
    "Index",
    "Lexicon",
    "OrankError",
    "ParseError",
    "Pipeline",
    "TrainingDivergenceError",
    "UnmatchedQueryError",
    "assess",
    "bm25_term",
    "evaluate",
    "query",
    "strength",
    "train_crf",
]
