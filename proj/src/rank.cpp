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

#include "orank/rank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "orank/error.hpp"
#include "strings.hpp"

namespace orank::rank {

namespace {

void push_unique(std::vector<std::string>& out, std::string term) {
  if (term.empty()) return;
  if (std::find(out.begin(), out.end(), term) == out.end()) out.push_back(std::move(term));
}

std::vector<std::string> words_of(std::string_view phrase) {
  std::vector<std::string> out;
  for (auto w : detail::split_ws(phrase)) out.emplace_back(w);
  return out;
}

std::string_view short_orientation(fuzzy::Orientation o) {
  switch (o) {
    case fuzzy::Orientation::Positive: return "pos";
    case fuzzy::Orientation::Negative: return "neg";
    case fuzzy::Orientation::Neutral: return "neu";
  }
  return "neu";
}

QueryAspect parse_structured_token(std::string_view token) {
  auto parts = detail::split(token, ':');
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
    throw DomainError("malformed query token '" + std::string(token) + "' (want aspect:pos|neg[:granularity])");
  }
  QueryAspect qa;
  std::string aspect = text::to_lower(parts[0]);
  std::replace(aspect.begin(), aspect.end(), '_', ' ');
  qa.aspect = std::move(aspect);
  try {
    qa.orientation = fuzzy::parse_orientation(text::to_lower(parts[1]));
    if (parts.size() == 3) {
      qa.granularity = fuzzy::parse_granularity(text::to_lower(parts[2]));
      qa.strength_specified = true;
    }
  } catch (const DomainError& e) {
    throw DomainError("malformed query token '" + std::string(token) + "': " + e.what());
  }
  return qa;
}

bool ranks_before(const RankedResult& a, const RankedResult& b) {
  if (a.tier != b.tier) return a.tier > b.tier;
  if (a.bm25 != b.bm25) return a.bm25 > b.bm25;
  return a.entity_id < b.entity_id;
}

}  // namespace

std::string Query::to_structured() const {
  std::string out;
  std::set<std::string> aspect_words;
  for (const auto& qa : aspects) {
    if (!out.empty()) out += ' ';
    std::string a = qa.aspect;
    std::replace(a.begin(), a.end(), ' ', '_');
    out += a;
    out += ':';
    out += short_orientation(qa.orientation);
    if (qa.strength_specified) {
      out += ':';
      out += fuzzy::to_string(qa.granularity);
    }
    for (auto& w : words_of(qa.aspect)) aspect_words.insert(w);
  }
  for (const auto& t : terms) {
    if (!aspect_words.contains(t)) out += ' ' + t;
  }
  return out;
}

Query parse_query(std::string_view text_in, const profile::Pipeline& pipeline) {
  Query query;
  query.raw = std::string(text_in);
  const auto words = detail::split_ws(text_in);
  if (words.empty()) throw EmptyQueryError("empty query");

  const bool structured =
      std::any_of(words.begin(), words.end(), [](std::string_view w) { return w.find(':') != std::string_view::npos; });

  std::vector<std::string> extra_terms;
  if (structured) {
    for (auto w : words) {
      if (w.find(':') != std::string_view::npos) {
        auto qa = parse_structured_token(w);
        bool seen = std::any_of(query.aspects.begin(), query.aspects.end(),
                                [&](const QueryAspect& q) { return q.aspect == qa.aspect; });
        if (!seen) query.aspects.push_back(std::move(qa));
      } else {
        for (const auto& sentence : text::tokenize(w)) {
          for (const auto& tok : sentence) extra_terms.push_back(text::to_lower(tok.surface));
        }
      }
    }
  } else {
    const auto analysis = profile::analyze(text_in, "query", pipeline);
    for (const auto& op : analysis.opinions) {
      bool seen = std::any_of(query.aspects.begin(), query.aspects.end(),
                              [&](const QueryAspect& q) { return q.aspect == op.aspect; });
      if (seen) continue;
      query.aspects.push_back(QueryAspect{op.aspect, op.orientation, op.granularity, true});
      for (const auto& w : op.opinion_words) extra_terms.push_back(w);
    }
  }
  if (query.aspects.empty()) throw EmptyQueryError("no aspect could be recovered from query '" + query.raw + "'");

  for (const auto& qa : query.aspects) {
    for (auto& w : words_of(qa.aspect)) push_unique(query.terms, std::move(w));
  }
  for (auto& t : extra_terms) push_unique(query.terms, std::move(t));
  return query;
}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::High: return "high";
    case Tier::Moderate: return "moderate";
    case Tier::Low: return "low";
    case Tier::NoMatch: return "none";
  }
  return "none";
}

int match_level(const profile::AspectSummary* found, const QueryAspect& wanted, int strength_tolerance) {
  if (!found) return 0;
  if (found->orientation != wanted.orientation) return 1;
  if (!wanted.strength_specified) return 3;
  const int gap = std::abs(static_cast<int>(found->granularity) - static_cast<int>(wanted.granularity));
  return gap <= strength_tolerance ? 3 : 2;
}

Tier tier(const profile::EntityProfile& profile, const Query& query, TierMode mode, int strength_tolerance,
          std::vector<AspectMatch>* matches) {
  if (matches) matches->clear();
  if (query.aspects.empty()) return Tier::NoMatch;
  int min_level = 3;
  int level_sum = 0;
  for (const auto& qa : query.aspects) {
    const auto* found = profile.find(qa.aspect);
    const int level = match_level(found, qa, strength_tolerance);
    min_level = std::min(min_level, level);
    level_sum += level;
    if (matches) {
      matches->push_back(AspectMatch{qa.aspect, level, found ? std::optional(*found) : std::nullopt});
    }
  }
  if (mode == TierMode::Conjunctive) return static_cast<Tier>(min_level);
  // Rounded half up in integer arithmetic: floor((2 * sum + n) / (2 * n)).
  const int n = static_cast<int>(query.aspects.size());
  return static_cast<Tier>((2 * level_sum + n) / (2 * n));
}

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw DomainError("bm25: k1 must be positive");
  if (!(b >= 0.0 && b <= 1.0)) throw DomainError("bm25: b must lie in [0,1]");
}

void DocumentStats::add(const std::string& term) {
  ++term_counts[term];
  ++length;
}

CorpusStats CorpusStats::compute(std::span<const DocumentStats> docs) {
  CorpusStats stats;
  stats.documents = docs.size();
  std::size_t total = 0;
  for (const auto& d : docs) {
    total += d.length;
    for (const auto& [term, count] : d.term_counts) {
      if (count > 0) ++stats.document_frequency[term];
    }
  }
  stats.avgdl = docs.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs.size());
  return stats;
}

double bm25_term(double count, double doc_length, double avgdl, double documents, double doc_frequency,
                 const Bm25Params& params) {
  if (count <= 0.0 || doc_frequency <= 0.0) return 0.0;
  const double length_ratio = avgdl > 0.0 ? doc_length / avgdl : 1.0;
  const double tf = params.k1 * count / (count + params.k1 * (1.0 - params.b + params.b * length_ratio));
  return tf * std::log((documents + 1.0) / doc_frequency);
}

double bm25(const DocumentStats& doc, std::span<const std::string> query_terms, const Bm25Params& params,
            const CorpusStats& stats) {
  std::set<std::string_view> distinct(query_terms.begin(), query_terms.end());
  double score = 0.0;
  for (auto term : distinct) {
    auto it = doc.term_counts.find(std::string(term));
    if (it == doc.term_counts.end() || it->second == 0) continue;
    auto df = stats.document_frequency.find(std::string(term));
    const double nt = df == stats.document_frequency.end() ? 0.0 : static_cast<double>(df->second);
    score += bm25_term(it->second, static_cast<double>(doc.length), stats.avgdl,
                       static_cast<double>(stats.documents), nt, params);
  }
  return score;
}

std::vector<RankedResult> rank(std::span<const IndexedEntity> entities, const CorpusStats& stats, const Query& query,
                               const RankOptions& options) {
  options.bm25.validate();
  std::vector<RankedResult> out;
  for (const auto& e : entities) {
    RankedResult r;
    r.entity_id = e.profile.entity_id;
    r.tier = tier(e.profile, query, options.mode, options.strength_tolerance, &r.matched_aspects);
    r.bm25 = bm25(e.document, query.terms, options.bm25, stats);
    if (options.use_tiers ? r.tier == Tier::NoMatch : !(r.bm25 > 0.0)) continue;
    out.push_back(std::move(r));
  }
  if (options.use_tiers) {
    std::sort(out.begin(), out.end(), ranks_before);
  } else {
    std::sort(out.begin(), out.end(), [](const RankedResult& a, const RankedResult& b) {
      if (a.bm25 != b.bm25) return a.bm25 > b.bm25;
      return a.entity_id < b.entity_id;
    });
  }
  return out;
}

}  // namespace orank::rank
