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

#include "orank/text.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "orank/error.hpp"
#include "strings.hpp"

namespace orank::text {

std::string_view to_string(PosClass pos) {
  switch (pos) {
    case PosClass::Adjective: return "adjective";
    case PosClass::Adverb: return "adverb";
    case PosClass::Negator: return "negator";
    case PosClass::Noun: return "noun";
    case PosClass::Other: return "other";
  }
  return "other";
}

std::string_view to_string(Polarity polarity) {
  return polarity == Polarity::Positive ? "positive" : "negative";
}

namespace {

// Degrees for like, love, good, excellent, really, extremely, enjoy and very
// are the reference values; the rest are graded against them.
constexpr const char* kBuiltinLexicon = R"(# lemma	degree	polarity	pos_class
absolutely	9	positive	adverb
affordable	3	positive	adjective
amazing	7	positive	adjective
awesome	7	positive	adjective
awful	8	negative	adjective
bad	4	negative	adjective
barely	1	positive	adverb
beautiful	5	positive	adjective
blurry	4	negative	adjective
bright	4	positive	adjective
brilliant	7	positive	adjective
broken	7	negative	adjective
clean	4	positive	adjective
clear	4	positive	adjective
comfortable	4	positive	adjective
cramped	4	negative	adjective
crisp	5	positive	adjective
decent	2	positive	adjective
dim	3	negative	adjective
dirty	5	negative	adjective
disappointing	5	negative	adjective
dull	3	negative	adjective
enjoy	8	positive	adjective
excellent	6	positive	adjective
exceptionally	8	positive	adverb
expensive	3	negative	adjective
extremely	9	positive	adverb
fairly	3	positive	adverb
fantastic	7	positive	adjective
fast	4	positive	adjective
fine	2	positive	adjective
flimsy	4	negative	adjective
friendly	4	positive	adjective
good	3	positive	adjective
gorgeous	7	positive	adjective
grainy	4	negative	adjective
great	5	positive	adjective
helpful	4	positive	adjective
highly	7	positive	adverb
horrible	8	negative	adjective
impressive	6	positive	adjective
incredibly	8	positive	adverb
laggy	4	negative	adjective
like	4	positive	adjective
loud	3	negative	adjective
love	5	positive	adjective
lovely	5	positive	adjective
mediocre	2	negative	adjective
nice	3	positive	adjective
noisy	3	negative	adjective
outstanding	8	positive	adjective
overpriced	4	negative	adjective
perfect	8	positive	adjective
pleasant	3	positive	adjective
poor	4	negative	adjective
pretty	3	positive	adverb
quiet	3	positive	adjective
quite	3	positive	adverb
rather	3	positive	adverb
really	5	positive	adverb
reasonably	2	positive	adverb
reliable	4	positive	adjective
remarkably	7	positive	adverb
responsive	4	positive	adjective
rude	6	negative	adjective
sharp	4	positive	adjective
short	3	negative	adjective
slightly	1	positive	adverb
slow	4	negative	adjective
sluggish	4	negative	adjective
smelly	5	negative	adjective
smooth	4	positive	adjective
snappy	4	positive	adjective
so	4	positive	adverb
solid	3	positive	adjective
somewhat	2	positive	adverb
spacious	4	positive	adjective
spotless	7	positive	adjective
super	6	positive	adverb
superb	7	positive	adjective
terrible	8	negative	adjective
too	4	positive	adverb
truly	6	positive	adverb
uncomfortable	4	negative	adjective
unhelpful	4	negative	adjective
unreliable	5	negative	adjective
very	5	positive	adverb
vivid	5	positive	adjective
weak	3	negative	adjective
wonderful	7	positive	adjective
worst	9	negative	adjective
)";

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_word_byte(unsigned char c) { return is_ascii_alnum(c) || c >= 0x80 || c == '\'' || c == '-'; }

bool is_sentence_end(unsigned char c) { return c == '.' || c == '!' || c == '?'; }

PosClass parse_pos(std::string_view s) {
  if (s == "adjective") return PosClass::Adjective;
  if (s == "adverb") return PosClass::Adverb;
  throw DomainError("lexicon pos_class must be adjective or adverb, got '" + std::string(s) + "'");
}

Polarity parse_polarity(std::string_view s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  throw DomainError("lexicon polarity must be positive or negative, got '" + std::string(s) + "'");
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

const OpinionLexicon& OpinionLexicon::builtin() {
  static const OpinionLexicon lexicon = [] {
    std::istringstream in(kBuiltinLexicon);
    return load(in, "<builtin lexicon>");
  }();
  return lexicon;
}

void OpinionLexicon::add(std::string lemma, LexiconEntry entry) {
  if (lemma.empty()) throw DomainError("empty lexicon lemma");
  if (!(entry.degree >= 0.0 && entry.degree <= 10.0)) {
    throw DomainError("degree of '" + lemma + "' outside [0,10]");
  }
  if (entry.pos_class != PosClass::Adjective && entry.pos_class != PosClass::Adverb) {
    throw DomainError("lexicon entry '" + lemma + "' must be an adjective or adverb");
  }
  entries_.insert_or_assign(to_lower(lemma), entry);
}

const LexiconEntry* OpinionLexicon::find(std::string_view lowercase_lemma) const {
  auto it = entries_.find(lowercase_lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

OpinionLexicon OpinionLexicon::load(std::istream& in, const std::string& source) {
  OpinionLexicon lexicon;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::chomp(raw);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 4) throw ParseError(source, line_no, "expected 4 tab-separated fields");
    auto degree = detail::parse_double(fields[1]);
    if (!degree) throw ParseError(source, line_no, "bad degree '" + std::string(fields[1]) + "'");
    std::string lemma = to_lower(fields[0]);
    if (lexicon.find(lemma)) throw ParseError(source, line_no, "duplicate lemma '" + lemma + "'");
    try {
      lexicon.add(lemma, {*degree, parse_polarity(fields[2]), parse_pos(fields[3])});
    } catch (const DomainError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return lexicon;
}

OpinionLexicon OpinionLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open lexicon file");
  return load(in, path);
}

void OpinionLexicon::save(std::ostream& out) const {
  out << "# lemma\tdegree\tpolarity\tpos_class\n";
  for (const auto& [lemma, e] : entries_) {
    out << lemma << '\t' << detail::format_double(e.degree) << '\t' << to_string(e.polarity) << '\t'
        << to_string(e.pos_class) << '\n';
  }
}

std::string OpinionLexicon::serialize() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

const std::set<std::string, std::less<>>& negators() {
  static const std::set<std::string, std::less<>> words{"not", "no", "never", "n't"};
  return words;
}

const std::set<std::string, std::less<>>& known_nouns() {
  static const std::set<std::string, std::less<>> words{
      "bathroom", "battery",  "bed",      "brakes",    "breakfast", "build",   "camera",
      "car",      "channels", "charger",  "design",    "display",   "drive",   "engine",
      "fan",      "food",     "hinge",    "hotel",     "hygiene",   "keyboard", "laptop",
      "life",     "location", "memory",   "mileage",   "parking",   "performance", "pool",
      "ports",    "price",    "processor", "quality",  "room",      "rooms",   "screen",
      "seats",    "service",  "sound",    "speakers",  "staff",     "storage", "touchpad",
      "trackpad", "tv",       "view",     "webcam",    "weight",    "wifi"};
  return words;
}

std::vector<Sentence> tokenize(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;

  auto flush_sentence = [&] {
    if (!current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  };
  auto push_word = [&](std::string_view word) {
    // Quotes and dashes only count inside a word.
    while (!word.empty() && (word.front() == '\'' || word.front() == '-')) word.remove_prefix(1);
    while (!word.empty() && (word.back() == '\'' || word.back() == '-')) word.remove_suffix(1);
    if (word.empty()) return;
    auto emit = [&](std::string_view w) {
      current.push_back(Token{std::string(w), current.size(), sentences.size()});
    };
    if (word.size() > 3 && to_lower(word.substr(word.size() - 3)) == "n't") {
      emit(word.substr(0, word.size() - 3));
      emit(word.substr(word.size() - 3));
    } else {
      emit(word);
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        auto d = static_cast<unsigned char>(text[j]);
        // A decimal point between digits stays inside the number.
        bool decimal = d == '.' && j > i && is_digit(static_cast<unsigned char>(text[j - 1])) &&
                       j + 1 < text.size() && is_digit(static_cast<unsigned char>(text[j + 1]));
        if (!is_word_byte(d) && !decimal) break;
        ++j;
      }
      push_word(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_sentence_end(c)) flush_sentence();
    ++i;
  }
  flush_sentence();
  return sentences;
}

std::vector<TaggedToken> tag(std::span<const Token> sentence, const OpinionLexicon& lexicon) {
  std::vector<TaggedToken> out;
  out.reserve(sentence.size());
  for (const auto& token : sentence) {
    std::string lower = to_lower(token.surface);
    PosClass pos = PosClass::Other;
    if (const auto* entry = lexicon.find(lower)) {
      pos = entry->pos_class;
    } else if (negators().contains(lower)) {
      pos = PosClass::Negator;
    } else if (known_nouns().contains(lower)) {
      pos = PosClass::Noun;
    } else if (lower.size() > 3 && lower.ends_with("ly")) {
      pos = PosClass::Adverb;
    }
    out.push_back(TaggedToken{token, pos});
  }
  return out;
}

std::vector<OpinionUnit> extract_opinion_units(std::span<const TaggedToken> tagged,
                                               const OpinionLexicon& lexicon) {
  std::vector<OpinionUnit> units;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].pos_class != PosClass::Adjective) continue;
    const auto* adj = lexicon.find(to_lower(tagged[i].token.surface));
    if (!adj || adj->pos_class != PosClass::Adjective) continue;

    OpinionUnit unit;
    unit.adjective = tagged[i];
    unit.degree = adj->degree;
    unit.polarity = adj->polarity;
    unit.sentence_id = tagged[i].token.sentence_id;

    for (std::size_t d = 1; d <= kModifierWindow && d <= i; ++d) {
      const auto& cand = tagged[i - d];
      if (cand.pos_class != PosClass::Adverb) continue;
      const auto* adv = lexicon.find(to_lower(cand.token.surface));
      if (adv && adv->pos_class == PosClass::Adverb) {
        unit.modifier = Modifier{cand, adv->degree};
        break;
      }
    }
    for (std::size_t d = 1; d <= kNegationWindow && d <= i; ++d) {
      if (tagged[i - d].pos_class == PosClass::Negator) {
        unit.negated = true;
        break;
      }
    }
    units.push_back(std::move(unit));
  }
  return units;
}

}  // namespace orank::text
