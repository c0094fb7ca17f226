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

#include "orank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <set>

#include "strings.hpp"

namespace orank::eval {

namespace {

std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

std::vector<std::string> entity_ids(const std::vector<rank::RankedResult>& results) {
  std::vector<std::string> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.entity_id);
  return out;
}

Metrics score(const std::vector<std::string>& ranked, const std::map<std::string, int>& judged, std::size_t k) {
  return Metrics{precision_at(ranked, judged, k), ndcg_at(ranked, judged, k)};
}

}  // namespace

UnmatchedQueryError::UnmatchedQueryError(std::vector<std::string> ids)
    : Error("unmatched query ids: " + join(ids)), ids_(std::move(ids)) {}

std::vector<QueryLine> read_queries(std::istream& in, const std::string& source) {
  std::vector<QueryLine> out;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::chomp(raw);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) throw ParseError(source, line_no, "expected query_id<TAB>query");
    QueryLine q{std::string(line.substr(0, tab)), std::string(detail::trim(line.substr(tab + 1)))};
    if (!seen.insert(q.id).second) throw ParseError(source, line_no, "duplicate query id '" + q.id + "'");
    out.push_back(std::move(q));
  }
  return out;
}

Qrels read_qrels(std::istream& in, const std::string& source) {
  Qrels qrels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::chomp(raw);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto f = detail::split_ws(line);
    if (f.size() != 3 && f.size() != 4) throw ParseError(source, line_no, "expected query_id entity_id grade");
    const auto& entity = f.size() == 3 ? f[1] : f[2];
    auto grade = detail::parse_int<int>(f.back());
    if (!grade) throw ParseError(source, line_no, "bad grade '" + std::string(f.back()) + "'");
    qrels[std::string(f[0])][std::string(entity)] = *grade;
  }
  return qrels;
}

double precision_at(std::span<const std::string> ranked, const std::map<std::string, int>& judged, std::size_t k) {
  if (k == 0) throw DomainError("precision_at: k must be positive");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
    auto it = judged.find(ranked[i]);
    if (it != judged.end() && it->second > 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double ndcg_at(std::span<const std::string> ranked, const std::map<std::string, int>& judged, std::size_t k) {
  if (k == 0) throw DomainError("ndcg_at: k must be positive");
  auto gain = [](int grade) { return grade > 0 ? std::exp2(static_cast<double>(grade)) - 1.0 : 0.0; };
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
    auto it = judged.find(ranked[i]);
    if (it != judged.end()) dcg += gain(it->second) / std::log2(static_cast<double>(i) + 2.0);
  }
  std::vector<int> grades;
  for (const auto& [entity, grade] : judged) grades.push_back(grade);
  std::sort(grades.begin(), grades.end(), std::greater<>());
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, grades.size()); ++i) {
    ideal += gain(grades[i]) / std::log2(static_cast<double>(i) + 2.0);
  }
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

Report evaluate(const corpus::Index& index, const profile::Pipeline& pipeline, std::span<const QueryLine> queries,
                const Qrels& qrels, const rank::RankOptions& options, std::size_t k, bool with_baseline) {
  if (qrels.empty()) throw DomainError("no relevance judgments");
  if (k == 0) throw DomainError("evaluate: k must be positive");

  std::vector<std::string> unmatched;
  std::set<std::string> query_ids;
  for (const auto& q : queries) {
    query_ids.insert(q.id);
    if (!qrels.contains(q.id)) unmatched.push_back(q.id);
  }
  for (const auto& [id, judged] : qrels) {
    if (!query_ids.contains(id)) unmatched.push_back(id);
  }
  if (!unmatched.empty()) throw UnmatchedQueryError(std::move(unmatched));

  Report report;
  report.k = k;
  Metrics sum_system;
  Metrics sum_baseline;
  for (const auto& q : queries) {
    const auto& judged = qrels.at(q.id);
    const auto query = rank::parse_query(q.text, pipeline);
    QueryResult row{q.id, {}, std::nullopt};
    row.system = score(entity_ids(rank::rank(index.entities, index.stats, query, options)), judged, k);
    sum_system.precision += row.system.precision;
    sum_system.ndcg += row.system.ndcg;
    if (with_baseline) {
      auto baseline_options = options;
      baseline_options.use_tiers = false;
      row.baseline = score(entity_ids(rank::rank(index.entities, index.stats, query, baseline_options)), judged, k);
      sum_baseline.precision += row.baseline->precision;
      sum_baseline.ndcg += row.baseline->ndcg;
    }
    report.queries.push_back(std::move(row));
  }
  const double n = queries.empty() ? 1.0 : static_cast<double>(queries.size());
  report.mean_system = Metrics{sum_system.precision / n, sum_system.ndcg / n};
  if (with_baseline) report.mean_baseline = Metrics{sum_baseline.precision / n, sum_baseline.ndcg / n};
  return report;
}

}  // namespace orank::eval
