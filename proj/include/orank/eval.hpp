// Copyright 2026 The opinion-rank Authors
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

// Ranked-list evaluation against graded relevance judgments.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orank/corpus.hpp"
#include "orank/error.hpp"
#include "orank/profile.hpp"
#include "orank/rank.hpp"

namespace orank::eval {

struct QueryLine {
  std::string id;
  std::string text;
};

/// `query_id<TAB>query text` per line.
std::vector<QueryLine> read_queries(std::istream& in, const std::string& source = "<queries>");

/// query id -> entity id -> grade. Grades above zero are relevant.
using Qrels = std::map<std::string, std::map<std::string, int>>;

/// `query_id entity_id grade` per line, whitespace separated. The TREC
/// four-column form `query_id 0 entity_id grade` is also accepted.
Qrels read_qrels(std::istream& in, const std::string& source = "<qrels>");

double precision_at(std::span<const std::string> ranked, const std::map<std::string, int>& judged, std::size_t k);

/// Gain 2^grade - 1, discount log2(rank + 1); 0 when no judged entity is relevant.
double ndcg_at(std::span<const std::string> ranked, const std::map<std::string, int>& judged, std::size_t k);

/// Raised when query ids in the two files do not line up.
class UnmatchedQueryError : public Error {
 public:
  explicit UnmatchedQueryError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

struct Metrics {
  double precision = 0.0;
  double ndcg = 0.0;
};

struct QueryResult {
  std::string query_id;
  Metrics system;
  std::optional<Metrics> baseline;
};

struct Report {
  std::size_t k = 0;
  std::vector<QueryResult> queries;
  Metrics mean_system;
  std::optional<Metrics> mean_baseline;
};

/// Scores the tiered ranking and, when `with_baseline`, BM25 alone with
/// tiers disabled. Throws UnmatchedQueryError when a query has no
/// judgments or a judgment names an unknown query, and DomainError when
/// there are no judgments at all.
Report evaluate(const corpus::Index& index, const profile::Pipeline& pipeline, std::span<const QueryLine> queries,
                const Qrels& qrels, const rank::RankOptions& options, std::size_t k, bool with_baseline);

}  // namespace orank::eval
