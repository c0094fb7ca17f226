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

#include <doctest.h>

#include <sstream>

#include "orank/corpus.hpp"
#include "orank/error.hpp"
#include "orank/eval.hpp"
#include "support.hpp"

using namespace orank;
using namespace orank::corpus;
using fuzzy::Orientation;

namespace {

const profile::Pipeline& toy_pipeline() {
  static const profile::Pipeline p = [] {
    profile::Pipeline out;
    out.model = crf::train(crf::read_conll_file(orank::testing::data_path("toy/toy.conll")), {}, out.lexicon);
    return out;
  }();
  return p;
}

std::vector<CorpusRecord> two_entities() {
  return {
      {"alpha", "r1", "The battery is excellent. I love this battery."},
      {"beta", "r1", "The battery is terrible. Battery is not good."},
  };
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("well formed") {
    std::istringstream in("a\t1\tGreat battery.\na\t2\tBad battery.\nb\t1\tFine\\tthing\\nsplit\n");
    auto r = ingest(in);
    REQUIRE(r.records.size() == 3);
    CHECK(r.skipped.empty());
    CHECK(r.records[2].text == "Fine\tthing\nsplit");
  }

  TEST_CASE("duplicate key names its line") {
    std::istringstream in("a\t1\tx\na\t1\ty\n");
    try {
      ingest(in, "c.tsv", true);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("c.tsv") != std::string::npos);
    }
  }

  TEST_CASE("lenient mode skips") {
    std::istringstream in("a\t1\tx\nbroken line\n\na\t2\ty\n");
    auto r = ingest(in, "c.tsv", false);
    CHECK(r.records.size() == 2);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].line == 2);
  }

  TEST_CASE("empty file") {
    std::istringstream in("");
    CHECK(ingest(in).records.empty());
  }

  TEST_CASE("write then read") {
    std::vector<CorpusRecord> recs{{"e", "r", "tab\there\nnewline \\ slash"}};
    std::ostringstream out;
    write_corpus(out, recs);
    std::istringstream in(out.str());
    CHECK(ingest(in).records == recs);
  }
}

TEST_SUITE("build_index") {
  TEST_CASE("counts") {
    BuildReport report;
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText, &report);
    CHECK(idx.entities.size() == 2);
    CHECK(idx.stats.documents == 2);
    CHECK(report.reviews_indexed == 2);
    CHECK(report.skipped.empty());
  }

  TEST_CASE("planted orientation") {
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText);
    auto* a = idx.entities[0].profile.find("battery");
    auto* b = idx.entities[1].profile.find("battery");
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    CHECK(idx.entities[0].profile.entity_id == "alpha");
    CHECK(a->orientation == Orientation::Positive);
    CHECK(b->orientation == Orientation::Negative);
    CHECK(a->mention_count == 2);
  }

  TEST_CASE("empty corpus") {
    auto idx = build_index({}, toy_pipeline(), DocumentMode::RawText);
    CHECK(idx.entities.empty());
    auto q = rank::parse_query("battery:pos", toy_pipeline());
    CHECK(rank::rank(idx.entities, idx.stats, q).empty());
  }

  TEST_CASE("aspect documents hold aspect and opinion words only") {
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::AspectOpinions);
    const auto& terms = idx.entities[0].document.term_counts;
    CHECK(terms.contains("battery"));
    CHECK(terms.contains("excellent"));
    CHECK_FALSE(terms.contains("the"));
  }

  TEST_CASE("rebuild is byte identical") {
    auto a = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText).serialize();
    auto b = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText).serialize();
    CHECK(a == b);
  }
}

TEST_SUITE("index io") {
  TEST_CASE("round trip") {
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText);
    std::istringstream in(idx.serialize());
    auto back = Index::load(in);
    CHECK(back.entities == idx.entities);
    CHECK(back.stats == idx.stats);
    CHECK(back.config_digest == idx.config_digest);
    CHECK(back.serialize() == idx.serialize());
  }

  TEST_CASE("truncated") {
    auto text = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText).serialize();
    for (std::size_t cut : {text.size() - 4, text.size() / 2, std::size_t{10}}) {
      CAPTURE(cut);
      std::istringstream in(text.substr(0, cut));
      try {
        Index::load(in);
        FAIL("expected FormatError");
      } catch (const FormatError& e) {
        CHECK(e.kind() == FormatError::Kind::Corrupt);
      }
    }
  }

  TEST_CASE("wrong magic") {
    std::istringstream in("ORIDX0\nend\n");
    try {
      Index::load(in);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.kind() == FormatError::Kind::Version);
    }
  }
}

TEST_SUITE("eval") {
  using namespace orank::eval;

  TEST_CASE("perfect single result") {
    std::vector<std::string> ranked{"a"};
    std::map<std::string, int> judged{{"a", 1}};
    CHECK(ndcg_at(ranked, judged, 1) == 1.0);
    CHECK(precision_at(ranked, judged, 1) == 1.0);
  }

  TEST_CASE("ndcg by hand") {
    std::vector<std::string> ranked{"b", "a", "c"};
    std::map<std::string, int> judged{{"a", 2}, {"b", 1}};
    const double dcg = 1.0 + 3.0 / std::log2(3.0);
    const double ideal = 3.0 + 1.0 / std::log2(3.0);
    CHECK(ndcg_at(ranked, judged, 3) == doctest::Approx(dcg / ideal));
    CHECK(precision_at(ranked, judged, 3) == doctest::Approx(2.0 / 3.0));
    CHECK(ndcg_at({}, judged, 3) == 0.0);
  }

  TEST_CASE("readers") {
    std::istringstream q("q1\tgood battery\n# skip\nq2\tclear display\n");
    auto queries = read_queries(q);
    REQUIRE(queries.size() == 2);
    CHECK(queries[1].text == "clear display");
    std::istringstream r("q1 a 2\nq1 0 b 1\n");
    auto qrels = read_qrels(r);
    CHECK(qrels.at("q1").at("b") == 1);
    std::istringstream dup("q1\tx\nq1\ty\n");
    CHECK_THROWS_AS(read_queries(dup), ParseError);
  }

  TEST_CASE("unmatched and empty") {
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText);
    std::vector<QueryLine> queries{{"q1", "battery:pos"}, {"q2", "battery:neg"}};
    Qrels qrels{{"q1", {{"alpha", 1}}}, {"q9", {{"beta", 1}}}};
    try {
      evaluate(idx, toy_pipeline(), queries, qrels, {}, 1, false);
      FAIL("expected UnmatchedQueryError");
    } catch (const UnmatchedQueryError& e) {
      CHECK(e.ids() == std::vector<std::string>{"q2", "q9"});
    }
    CHECK_THROWS_AS(evaluate(idx, toy_pipeline(), queries, {}, {}, 1, false), DomainError);
  }

  TEST_CASE("system and baseline") {
    auto idx = build_index(two_entities(), toy_pipeline(), DocumentMode::RawText);
    std::vector<QueryLine> queries{{"q1", "battery:pos"}};
    Qrels qrels{{"q1", {{"alpha", 1}}}};
    auto rep = evaluate(idx, toy_pipeline(), queries, qrels, {}, 1, true);
    CHECK(rep.mean_system.precision == 1.0);
    REQUIRE(rep.mean_baseline.has_value());
  }
}
