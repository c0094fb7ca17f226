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

#include <fstream>
#include <sstream>

#include "orank/error.hpp"
#include "orank/text.hpp"
#include "support.hpp"

using namespace orank;
using namespace orank::text;
using orank::testing::tagged;

namespace {

std::vector<std::string> surfaces(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(t.surface);
  return out;
}

std::vector<PosClass> classes(const std::vector<TaggedToken>& s) {
  std::vector<PosClass> out;
  for (const auto& t : s) out.push_back(t.pos_class);
  return out;
}

}  // namespace

TEST_SUITE("tokenize") {
  TEST_CASE("empty input has no sentences") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  ...  ").empty());
  }

  TEST_CASE("punctuation splits sentences and is dropped") {
    auto s = tokenize("Battery is good. Display is dim.");
    REQUIRE(s.size() == 2);
    CHECK(surfaces(s[0]) == std::vector<std::string>{"Battery", "is", "good"});
    CHECK(surfaces(s[1]) == std::vector<std::string>{"Display", "is", "dim"});
    CHECK(s[1][0].sentence_id == 1);
    CHECK(s[1][0].position == 0);
  }

  TEST_CASE("positions count from zero") {
    auto s = tokenize("extremely good battery");
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s[0][i].position == i);
  }

  TEST_CASE("contractions split off n't") {
    auto s = tokenize("It isn't bright!");
    REQUIRE(s.size() == 1);
    CHECK(surfaces(s[0]) == std::vector<std::string>{"It", "is", "n't", "bright"});
  }

  TEST_CASE("decimals stay whole and edge quotes go") {
    auto s = tokenize("'Lasts 7.5 hours' on a charge");
    REQUIRE(s.size() == 1);
    CHECK(surfaces(s[0]) == std::vector<std::string>{"Lasts", "7.5", "hours", "on", "a", "charge"});
  }
}

TEST_SUITE("tag") {
  TEST_CASE("lexicon adjective") { CHECK(classes(tagged("good")) == std::vector{PosClass::Adjective}); }

  TEST_CASE("lexicon adverb then adjective") {
    CHECK(classes(tagged("very good")) == std::vector{PosClass::Adverb, PosClass::Adjective});
  }

  TEST_CASE("negator") { CHECK(classes(tagged("not good")) == std::vector{PosClass::Negator, PosClass::Adjective}); }

  TEST_CASE("case does not matter") { CHECK(classes(tagged("GOOD Battery")) == std::vector{PosClass::Adjective, PosClass::Noun}); }

  TEST_CASE("unknown -ly words are adverbs") {
    CHECK(classes(tagged("surprisingly good")) == std::vector{PosClass::Adverb, PosClass::Adjective});
    CHECK(classes(tagged("fly")) == std::vector{PosClass::Other});
  }
}

TEST_SUITE("extract_opinion_units") {
  const auto& lex = OpinionLexicon::builtin();

  TEST_CASE("adverb modifier") {
    auto units = extract_opinion_units(tagged("extremely good"), lex);
    REQUIRE(units.size() == 1);
    CHECK(units[0].adjective.token.surface == "good");
    CHECK(units[0].degree == 3.0);
    CHECK(units[0].polarity == Polarity::Positive);
    REQUIRE(units[0].modifier.has_value());
    CHECK(units[0].modifier->token.token.surface == "extremely");
    CHECK(units[0].modifier->degree == 9.0);
    CHECK_FALSE(units[0].negated);
  }

  TEST_CASE("bare adjective") {
    auto units = extract_opinion_units(tagged("good"), lex);
    REQUIRE(units.size() == 1);
    CHECK_FALSE(units[0].modifier.has_value());
    CHECK_FALSE(units[0].negated);
  }

  TEST_CASE("negation reaches past the modifier") {
    auto units = extract_opinion_units(tagged("not very good"), lex);
    REQUIRE(units.size() == 1);
    CHECK(units[0].degree == 3.0);
    REQUIRE(units[0].modifier.has_value());
    CHECK(units[0].modifier->degree == 5.0);
    CHECK(units[0].negated);
  }

  TEST_CASE("windows are bounded") {
    // negator four tokens back is out of reach
    auto far = extract_opinion_units(tagged("not the battery is good"), lex);
    REQUIRE(far.size() == 1);
    CHECK_FALSE(far[0].negated);
    auto near = extract_opinion_units(tagged("not really that good"), lex);
    REQUIRE(near.size() == 1);
    CHECK(near[0].negated);
    CHECK(near[0].modifier.has_value());
    // modifier three tokens back is out of reach
    auto gap = extract_opinion_units(tagged("very much so good"), lex);
    REQUIRE(gap.size() == 1);
    REQUIRE(gap[0].modifier.has_value());
    CHECK(gap[0].modifier->token.token.surface == "so");
  }

  TEST_CASE("no adjective no unit") { CHECK(extract_opinion_units(tagged("the battery is very"), lex).empty()); }

  TEST_CASE("n't negates") {
    auto units = extract_opinion_units(tagged("it isn't good"), lex);
    REQUIRE(units.size() == 1);
    CHECK(units[0].negated);
  }
}

TEST_SUITE("lexicon") {
  TEST_CASE("reference degrees") {
    const auto& lex = OpinionLexicon::builtin();
    auto degree = [&](const char* w) { return lex.find(w)->degree; };
    CHECK(degree("like") == 4);
    CHECK(degree("love") == 5);
    CHECK(degree("good") == 3);
    CHECK(degree("excellent") == 6);
    CHECK(degree("really") == 5);
    CHECK(degree("extremely") == 9);
    CHECK(degree("enjoy") == 8);
    CHECK(degree("very") == 5);
  }

  TEST_CASE("bundled file equals the built-in lexicon") {
    auto file = OpinionLexicon::load_file(orank::testing::data_path("lexicon.tsv"));
    CHECK(file == OpinionLexicon::builtin());
    std::ifstream in(orank::testing::data_path("lexicon.tsv"));
    std::stringstream bytes;
    bytes << in.rdbuf();
    CHECK(bytes.str() == OpinionLexicon::builtin().serialize());
  }

  TEST_CASE("round trip") {
    auto copy = OpinionLexicon::builtin();
    copy.add("Snazzy", {6.5, Polarity::Positive, PosClass::Adjective});
    std::istringstream in(copy.serialize());
    CHECK(OpinionLexicon::load(in) == copy);
    CHECK(copy.find("snazzy") != nullptr);
  }

  TEST_CASE("errors name the line") {
    std::istringstream bad("good\t3\tpositive\tadjective\nfast\televen\tpositive\tadjective\n");
    try {
      OpinionLexicon::load(bad, "lex.tsv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    std::istringstream range("good\t12\tpositive\tadjective\n");
    CHECK_THROWS_AS(OpinionLexicon::load(range), ParseError);
    std::istringstream noun("battery\t3\tpositive\tnoun\n");
    CHECK_THROWS_AS(OpinionLexicon::load(noun), ParseError);
    std::istringstream dup("good\t3\tpositive\tadjective\nGood\t4\tpositive\tadjective\n");
    CHECK_THROWS_AS(OpinionLexicon::load(dup), ParseError);
  }

  TEST_CASE("missing file names the path") {
    CHECK_THROWS_WITH_AS(OpinionLexicon::load_file("/nonexistent/lex.tsv"), doctest::Contains("/nonexistent/lex.tsv"),
                         ParseError);
  }
}
