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

// Randomized invariants. Seeds are fixed so failures reproduce.

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "orank/corpus.hpp"
#include "orank/crf.hpp"
#include "orank/fuzzy.hpp"
#include "orank/rank.hpp"
#include "orank/text.hpp"
#include "support.hpp"

using namespace orank;
using namespace orank::testing;

TEST_CASE("tokens are numbered in order") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> pieces{"good", "battery", ".", "!", " ", "isn't", "very", "7.5", "?", "'", "-x-"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    for (int i = 0; i < 20; ++i) s += pieces[rng() % pieces.size()] + (rng() % 2 ? " " : "");
    auto sentences = text::tokenize(s);
    for (std::size_t k = 0; k < sentences.size(); ++k) {
      CHECK_FALSE(sentences[k].empty());
      for (std::size_t i = 0; i < sentences[k].size(); ++i) {
        CHECK(sentences[k][i].position == i);
        CHECK(sentences[k][i].sentence_id == k);
        CHECK_FALSE(sentences[k][i].surface.empty());
      }
    }
  }
}

TEST_CASE("strength stays inside the fired consequents") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (const auto& cfg : {fuzzy::FuzzyConfig{}, [] {
         fuzzy::FuzzyConfig c;
         c.conjunction = fuzzy::Conjunction::Minimum;
         c.implication = fuzzy::Implication::Clip;
         return c;
       }()}) {
    for (int trial = 0; trial < 300; ++trial) {
      const double adj = d(rng);
      const double adv = d(rng);
      auto mu = fuzzy::infer(adj, trial % 3 ? &adv : nullptr, cfg);
      double lo = 10.0;
      double hi = 0.0;
      for (std::size_t g = 0; g < fuzzy::kGranularities; ++g) {
        auto gran = static_cast<fuzzy::Granularity>(g);
        if (mu.strength(gran) > 0) {
          lo = std::min(lo, cfg.output[gran].a());
          hi = std::max(hi, cfg.output[gran].c());
        }
      }
      const double y = fuzzy::defuzzify(mu);
      CHECK(y >= lo);
      CHECK(y <= hi);
    }
  }
}

TEST_CASE("bare adjective strength grows with degree") {
  double prev = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double y = fuzzy::defuzzify(fuzzy::infer(k * 0.1, nullptr, {}));
    CHECK(y >= prev - 1e-9);
    prev = y;
  }
}

TEST_CASE("log Z bounds every path score and decode stays valid") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_model(8, rng, 3.0);
    auto x = random_sentence(1 + trial % 25, 8, rng);
    auto y = crf::decode(m, x);
    REQUIRE(y.size() == x.size());
    CHECK(crf::is_bio_valid(y));
    CHECK(crf::forward_log_partition(m, x) >= crf::sequence_score(m, x, y));
  }
}

TEST_CASE("bm25 grows with count and shrinks with length") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    rank::Bm25Params p{0.1 + 3.0 * u(rng), u(rng)};
    const double n = 1 + std::floor(50 * u(rng));
    const double nt = 1 + std::floor(n * u(rng));
    const double c = 1 + std::floor(20 * u(rng));
    const double dl = c + std::floor(100 * u(rng));
    const double avgdl = 1 + 50 * u(rng);
    const double base = rank::bm25_term(c, dl, avgdl, n, nt, p);
    CHECK(base >= 0.0);
    CHECK(rank::bm25_term(c + 1, dl, avgdl, n, nt, p) >= base);
    CHECK(rank::bm25_term(c, dl * 2, avgdl, n, nt, p) <= base);
    CHECK(base <= p.k1 * std::log((n + 1) / nt) + 1e-12);
  }
}

TEST_CASE("corpus fields survive escaping") {
  std::mt19937_64 rng(25);
  const std::string alphabet = "ab \t\n\\tn.";
  std::vector<corpus::CorpusRecord> recs;
  for (int i = 0; i < 100; ++i) {
    std::string text;
    for (int k = 0; k < 12; ++k) text += alphabet[rng() % alphabet.size()];
    if (text.find_first_not_of(" \t\n") == std::string::npos) text = "x" + text;
    recs.push_back({"e" + std::to_string(i % 7), "r" + std::to_string(i), text});
  }
  std::ostringstream out;
  corpus::write_corpus(out, recs);
  std::istringstream in(out.str());
  CHECK(corpus::ingest(in).records == recs);
}

TEST_CASE("ranking is sorted and complete") {
  std::mt19937_64 rng(26);
  const std::vector<std::string> aspects{"battery", "display", "fan"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<rank::IndexedEntity> entities;
    for (int e = 0; e < 12; ++e) {
      rank::IndexedEntity ent;
      ent.profile.entity_id = "e" + std::to_string(e);
      for (const auto& a : aspects) {
        if (rng() % 3 == 0) continue;
        ent.profile.aspects.emplace(a, summary(static_cast<fuzzy::Orientation>(rng() % 3),
                                               static_cast<fuzzy::Granularity>(rng() % 5)));
        for (int k = static_cast<int>(rng() % 4); k > 0; --k) ent.document.add(a);
      }
      ent.document.add("filler");
      entities.push_back(ent);
    }
    std::vector<rank::DocumentStats> docs;
    for (auto& e : entities) docs.push_back(e.document);
    auto stats = rank::CorpusStats::compute(docs);
    auto q = rank::parse_query("battery:pos:strong display:pos", profile::Pipeline{});
    auto r = rank::rank(entities, stats, q);
    CHECK(std::is_sorted(r.begin(), r.end(), comes_before));
    std::size_t matching = 0;
    for (auto& e : entities) matching += rank::tier(e.profile, q) != rank::Tier::NoMatch;
    CHECK(r.size() == matching);
  }
}
