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

#include <algorithm>
#include <random>

#include "orank/profile.hpp"
#include "support.hpp"

using namespace orank;
using namespace orank::profile;
using fuzzy::Granularity;
using fuzzy::Orientation;
using doctest::Approx;

namespace {

crf::AspectMention mention(const std::string& phrase, std::size_t begin, std::size_t end, std::size_t sentence = 0) {
  return crf::AspectMention{phrase, sentence, begin, end};
}

AssessedUnit unit_at(std::size_t position, double strength, Orientation o = Orientation::Positive,
                     std::size_t sentence = 0) {
  AssessedUnit u;
  u.unit.adjective.token = text::Token{"adj" + std::to_string(position), position, sentence};
  u.unit.adjective.pos_class = text::PosClass::Adjective;
  u.unit.sentence_id = sentence;
  u.assessment = fuzzy::SentimentAssessment{o, strength, fuzzy::GranularityIntervals{}.classify(strength)};
  return u;
}

AspectOpinion opinion(const std::string& aspect, Orientation o, double strength) {
  AspectOpinion op;
  op.aspect = aspect;
  op.orientation = o;
  op.strength = strength;
  op.granularity = fuzzy::GranularityIntervals{}.classify(strength);
  return op;
}

const Pipeline& laptop_pipeline() {
  static const Pipeline p = [] {
    Pipeline out;
    auto corpus = crf::read_conll_file(orank::testing::data_path("laptop/annotations.conll"));
    out.model = crf::train(corpus, {}, out.lexicon);
    return out;
  }();
  return p;
}

}  // namespace

TEST_SUITE("pair") {
  TEST_CASE("single candidate") {
    auto a = laptop_pipeline();
    auto r = analyze("Battery life is extremely good.", "r1", a);
    REQUIRE(r.opinions.size() == 1);
    CHECK(r.opinions[0].aspect == "battery life");
    CHECK(r.opinions[0].orientation == Orientation::Positive);
    REQUIRE(r.units.size() == 1);
    CHECK(r.opinions[0].strength == r.units[0].assessment.strength);
    CHECK(r.opinions[0].opinion_words == std::vector<std::string>{"extremely", "good"});
  }

  TEST_CASE("aspect without opinion is dropped") {
    std::vector aspects{mention("battery", 0, 1)};
    CHECK(pair(aspects, {}, "r").empty());
    std::vector units{unit_at(3, 4.0, Orientation::Positive, 1)};
    CHECK(pair(aspects, units, "r").empty());  // different sentence
  }

  TEST_CASE("equidistant unit serves both aspects") {
    // battery(0) is(1) good(2) and(3) display(4)
    std::vector aspects{mention("battery", 0, 1), mention("display", 4, 5)};
    std::vector units{unit_at(2, 3.3)};
    auto ops = pair(aspects, units, "r");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0].strength == 3.3);
    CHECK(ops[1].strength == 3.3);
  }

  TEST_CASE("nearest unit wins, ties go earlier") {
    // good(0) battery(1) life(2) and(3) clear(4) display(5)
    std::vector aspects{mention("battery life", 1, 3), mention("display", 5, 6)};
    std::vector units{unit_at(0, 3.0), unit_at(4, 4.0)};
    auto ops = pair(aspects, units, "r");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0].strength == 3.0);
    CHECK(ops[1].strength == 4.0);

    std::vector middle{mention("fan", 2, 3)};
    auto tie = pair(middle, std::vector{unit_at(0, 1.0), unit_at(4, 9.0)}, "r");
    REQUIRE(tie.size() == 1);
    CHECK(tie[0].strength == 1.0);
  }

  TEST_CASE("headline query sentence") {
    auto r = analyze("good battery life and clear display", "q", laptop_pipeline());
    REQUIRE(r.opinions.size() == 2);
    CHECK(r.opinions[0].aspect == "battery life");
    CHECK(r.opinions[0].opinion_words == std::vector<std::string>{"good"});
    CHECK(r.opinions[1].aspect == "display");
    CHECK(r.opinions[1].opinion_words == std::vector<std::string>{"clear"});
  }
}

TEST_SUITE("summarize") {
  TEST_CASE("single mention") {
    std::vector ops{opinion("battery", Orientation::Positive, 6.0)};
    auto p = summarize("e", ops, 1);
    auto* s = p.find("battery");
    REQUIRE(s != nullptr);
    CHECK(s->orientation == Orientation::Positive);
    CHECK(s->mean_strength == 6.0);
    CHECK(s->granularity == Granularity::Strong);
    CHECK(s->mention_count == 1);
  }

  TEST_CASE("mean") {
    std::vector ops{opinion("battery", Orientation::Positive, 4.0), opinion("battery", Orientation::Positive, 6.0)};
    auto* s = summarize("e", ops, 2).find("battery");
    REQUIRE(s != nullptr);
    CHECK(s->mean_strength == 5.0);
    CHECK(s->granularity == Granularity::Moderate);
    CHECK(s->mention_count == 2);
  }

  TEST_CASE("tie is neutral") {
    std::vector ops{opinion("battery", Orientation::Positive, 5.0), opinion("battery", Orientation::Negative, 5.0)};
    CHECK(summarize("e", ops, 2).find("battery")->orientation == Orientation::Neutral);
  }

  TEST_CASE("order does not matter") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> s(0.0, 10.0);
    std::vector<AspectOpinion> ops;
    for (int i = 0; i < 30; ++i) {
      ops.push_back(opinion(i % 3 ? "battery" : "display", i % 4 ? Orientation::Positive : Orientation::Negative, s(rng)));
    }
    auto base = summarize("e", ops, 30);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(ops.begin(), ops.end(), rng);
      CHECK(summarize("e", ops, 30) == base);
    }
  }

  TEST_CASE("mean stays inside the observed range") {
    std::vector<AspectOpinion> ops(7, opinion("fan", Orientation::Positive, 0.1));
    auto* s = summarize("e", ops, 7).find("fan");
    CHECK(s->mean_strength >= 0.1);
    CHECK(s->mean_strength <= 0.1);
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("digest tracks every component") {
    Pipeline a;
    Pipeline b;
    CHECK(a.digest() == b.digest());
    CHECK(a.digest().size() == 16);
    b.fuzzy.implication = fuzzy::Implication::Clip;
    CHECK(a.digest() != b.digest());
    Pipeline c;
    c.lexicon.add("zippy", {4, text::Polarity::Positive, text::PosClass::Adjective});
    CHECK(a.digest() != c.digest());
    CHECK(a.digest() != laptop_pipeline().digest());
  }
}
