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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orank/fuzzy.hpp"
#include "orank/profile.hpp"

namespace orank::rank {

struct QueryAspect {
  std::string aspect;
  fuzzy::Orientation orientation = fuzzy::Orientation::Positive;
  fuzzy::Granularity granularity = fuzzy::Granularity::Moderate;  // meaningful only when specified
  bool strength_specified = false;

  bool operator==(const QueryAspect&) const = default;
};

struct Query {
  std::string raw;
  std::vector<QueryAspect> aspects;
  /// BM25 terms: aspect words followed by opinion words, lowercase, unique.
  std::vector<std::string> terms;

  /// Structured form that parses back to the same aspects and terms.
  std::string to_structured() const;
  bool operator==(const Query&) const = default;
};

/// Free text goes through the review pipeline. A query with at least one
/// `aspect:pos|neg[:granularity]` token is structured instead: underscores
/// in the aspect stand for spaces, and any other word is a plain BM25 term.
/// Throws EmptyQueryError when no aspect is recovered and DomainError on a
/// malformed structured token.
Query parse_query(std::string_view text, const profile::Pipeline& pipeline);

enum class Tier : std::uint8_t { NoMatch = 0, Low = 1, Moderate = 2, High = 3 };

std::string_view to_string(Tier tier);

enum class TierMode {
  Conjunctive,  // tier is the weakest per-aspect level
  Average,      // tier is the per-aspect level mean, rounded half up
};

struct AspectMatch {
  std::string aspect;
  /// 3 aspect+orientation+strength, 2 aspect+orientation, 1 aspect only, 0 absent.
  int level = 0;
  std::optional<profile::AspectSummary> found;

  bool operator==(const AspectMatch&) const = default;
};

/// An unspecified query strength matches any strength.
int match_level(const profile::AspectSummary* found, const QueryAspect& wanted, int strength_tolerance = 1);

Tier tier(const profile::EntityProfile& profile, const Query& query, TierMode mode = TierMode::Conjunctive,
          int strength_tolerance = 1, std::vector<AspectMatch>* matches = nullptr);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  /// Throws DomainError unless k1 > 0 and 0 <= b <= 1.
  void validate() const;
  bool operator==(const Bm25Params&) const = default;
};

struct DocumentStats {
  std::map<std::string, std::uint32_t> term_counts;
  std::size_t length = 0;

  void add(const std::string& term);
  bool operator==(const DocumentStats&) const = default;
};

struct CorpusStats {
  std::size_t documents = 0;  // n
  double avgdl = 0.0;
  std::map<std::string, std::size_t> document_frequency;

  static CorpusStats compute(std::span<const DocumentStats> docs);
  bool operator==(const CorpusStats&) const = default;
};

/// One term's contribution:
///   k1 * c / (c + k1 * (1 - b + b * |D| / avgdl)) * ln((n + 1) / n_t).
/// Zero when c or n_t is zero.
double bm25_term(double count, double doc_length, double avgdl, double documents, double doc_frequency,
                 const Bm25Params& params);

/// Sum over distinct query terms present in the document.
double bm25(const DocumentStats& doc, std::span<const std::string> query_terms, const Bm25Params& params,
            const CorpusStats& stats);

struct IndexedEntity {
  profile::EntityProfile profile;
  DocumentStats document;

  bool operator==(const IndexedEntity&) const = default;
};

struct RankOptions {
  Bm25Params bm25;
  TierMode mode = TierMode::Conjunctive;
  int strength_tolerance = 1;
  /// false ranks by BM25 alone and keeps only entities with a positive score.
  bool use_tiers = true;
};

struct RankedResult {
  std::string entity_id;
  Tier tier = Tier::NoMatch;
  double bm25 = 0.0;
  std::vector<AspectMatch> matched_aspects;

  bool operator==(const RankedResult&) const = default;
};

/// Drops NoMatch entities and sorts by tier, then BM25, both descending,
/// then entity id ascending.
std::vector<RankedResult> rank(std::span<const IndexedEntity> entities, const CorpusStats& stats, const Query& query,
                               const RankOptions& options = {});

}  // namespace orank::rank
