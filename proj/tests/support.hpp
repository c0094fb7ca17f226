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

// Shared helpers for the unit and acceptance tests.

#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "orank/crf.hpp"
#include "orank/fuzzy.hpp"
#include "orank/profile.hpp"
#include "orank/rank.hpp"
#include "orank/text.hpp"

namespace orank::testing {

inline std::string data_path(const std::string& rel) { return std::string(ORANK_DATA_DIR) + "/" + rel; }

/// Values written by tests/oracle/oracle.py.
inline const nlohmann::json& frozen() {
  static const nlohmann::json j = [] {
    std::ifstream in(ORANK_ORACLE_JSON);
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline std::vector<text::TaggedToken> tagged(const std::string& sentence,
                                             const text::OpinionLexicon& lexicon = text::OpinionLexicon::builtin()) {
  auto sentences = text::tokenize(sentence);
  if (sentences.empty()) return {};
  return text::tag(sentences.front(), lexicon);
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------- CRF oracle

/// Score of `labels` computed straight from the weight accessors.
inline double brute_score(const crf::CrfModel& m, const crf::SentenceFeatures& x, const std::vector<crf::Label>& y) {
  double s = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    for (const auto& [f, v] : x[t].entries) s += v * m.emission(f, y[t]);
    if (t > 0) s += m.transition(y[t - 1], y[t]);
  }
  return s;
}

/// Calls `visit` on every one of the 3^n label sequences.
template <typename Visit>
void for_each_sequence(std::size_t n, Visit&& visit) {
  std::vector<crf::Label> y(n, crf::Label::O);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    // most significant position first, so enumeration order is lexicographic
    for (std::size_t i = n; i-- > 0;) {
      y[i] = static_cast<crf::Label>(c % 3);
      c /= 3;
    }
    visit(y);
  }
}

inline double brute_log_partition(const crf::CrfModel& m, const crf::SentenceFeatures& x) {
  std::vector<double> scores;
  for_each_sequence(x.size(), [&](const auto& y) { scores.push_back(brute_score(m, x, y)); });
  const double hi = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - hi);
  return hi + std::log(sum);
}

/// Best BIO-valid sequence; the lexicographically first one wins ties.
inline std::vector<crf::Label> brute_argmax(const crf::CrfModel& m, const crf::SentenceFeatures& x) {
  std::vector<crf::Label> best;
  double best_score = -std::numeric_limits<double>::infinity();
  for_each_sequence(x.size(), [&](const auto& y) {
    if (!crf::is_bio_valid(y)) return;
    const double s = brute_score(m, x, y);
    if (s > best_score) {
      best_score = s;
      best = y;
    }
  });
  return best;
}

/// A model over `features` named features with weights drawn from N(0, sd).
inline crf::CrfModel random_model(std::size_t features, std::mt19937_64& rng, double sd = 1.0) {
  crf::FeatureDictionary dict;
  for (std::size_t i = 0; i < features; ++i) dict.intern("f" + std::to_string(i));
  crf::CrfModel m(std::move(dict), {});
  std::normal_distribution<double> w(0.0, sd);
  for (double& v : m.weights()) v = w(rng);
  return m;
}

/// A sentence of `n` positions, each firing 1 to 3 distinct features.
inline crf::SentenceFeatures random_sentence(std::size_t n, std::size_t features, std::mt19937_64& rng) {
  crf::SentenceFeatures x(n);
  std::uniform_int_distribution<std::size_t> pick(0, features - 1);
  std::uniform_int_distribution<int> count(1, 3);
  for (auto& fv : x) {
    std::vector<crf::FeatureId> ids;
    for (int k = count(rng); k > 0; --k) ids.push_back(static_cast<crf::FeatureId>(pick(rng)));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids) fv.entries.emplace_back(id, 1.0);
  }
  return x;
}

// ---------------------------------------------------------------- ranking oracle

inline profile::AspectSummary summary(fuzzy::Orientation o, fuzzy::Granularity g, std::size_t mentions = 1) {
  profile::AspectSummary s;
  s.orientation = o;
  s.granularity = g;
  s.mean_strength = 1.0 + 2.0 * static_cast<double>(g);
  s.mention_count = mentions;
  return s;
}

/// The declared order written out as a plain comparison.
inline bool comes_before(const rank::RankedResult& a, const rank::RankedResult& b) {
  if (a.tier != b.tier) return a.tier > b.tier;
  if (a.bm25 != b.bm25) return a.bm25 > b.bm25;
  return a.entity_id < b.entity_id;
}

}  // namespace orank::testing
