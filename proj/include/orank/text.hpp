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
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orank::text {

struct Token {
  std::string surface;
  std::size_t position = 0;     // within the sentence
  std::size_t sentence_id = 0;  // within the review

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

enum class PosClass { Adjective, Adverb, Negator, Noun, Other };

enum class Polarity { Positive, Negative };

std::string_view to_string(PosClass pos);
std::string_view to_string(Polarity polarity);

struct TaggedToken {
  Token token;
  PosClass pos_class = PosClass::Other;

  bool operator==(const TaggedToken&) const = default;
};

struct LexiconEntry {
  double degree = 0.0;  // [0, 10]
  Polarity polarity = Polarity::Positive;
  PosClass pos_class = PosClass::Adjective;  // Adjective or Adverb only

  bool operator==(const LexiconEntry&) const = default;
};

/// Opinion words with their intensity degree.
///
/// Keys are lowercase lemmas. The on-disk form is one entry per line,
/// `lemma<TAB>degree<TAB>polarity<TAB>pos_class`; blank lines and lines
/// starting with '#' are ignored on load. `save` writes entries sorted by
/// lemma, so load followed by save reproduces a canonical file exactly.
class OpinionLexicon {
 public:
  OpinionLexicon() = default;

  /// Lexicon shipped with the library; also written to data/lexicon.tsv.
  static const OpinionLexicon& builtin();

  static OpinionLexicon load(std::istream& in, const std::string& source = "<lexicon>");
  static OpinionLexicon load_file(const std::string& path);
  void save(std::ostream& out) const;
  std::string serialize() const;

  /// Throws DomainError on an out-of-range degree or a non-opinion class.
  void add(std::string lemma, LexiconEntry entry);

  const LexiconEntry* find(std::string_view lowercase_lemma) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const { return entries_; }

  bool operator==(const OpinionLexicon&) const = default;

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
};

/// Closed-class words used by the heuristic tagger.
const std::set<std::string, std::less<>>& negators();
const std::set<std::string, std::less<>>& known_nouns();

std::string to_lower(std::string_view s);

/// Splits text into sentences on '.', '!' and '?', and sentences into word
/// tokens. Word characters are ASCII alphanumerics, apostrophes, inner
/// hyphens and any non-ASCII byte; everything else separates tokens.
/// Contractions ending in "n't" are split into the stem and "n't".
std::vector<Sentence> tokenize(std::string_view text);

/// Lexicon classes first, then the negator set, the known-noun list and
/// the "-ly" adverb suffix rule.
std::vector<TaggedToken> tag(std::span<const Token> sentence, const OpinionLexicon& lexicon);

struct Modifier {
  TaggedToken token;
  double degree = 0.0;

  bool operator==(const Modifier&) const = default;
};

struct OpinionUnit {
  TaggedToken adjective;
  double degree = 0.0;
  Polarity polarity = Polarity::Positive;
  std::optional<Modifier> modifier;
  bool negated = false;
  std::size_t sentence_id = 0;

  bool operator==(const OpinionUnit&) const = default;
};

inline constexpr std::size_t kModifierWindow = 2;
inline constexpr std::size_t kNegationWindow = 3;

/// One unit per lexicon adjective, in sentence order. The modifier is the
/// nearest lexicon adverb among the two preceding tokens; the unit is
/// negated when a negator appears among the three preceding tokens.
std::vector<OpinionUnit> extract_opinion_units(std::span<const TaggedToken> tagged,
                                               const OpinionLexicon& lexicon);

}  // namespace orank::text
