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

// Linear-chain CRF for BIO aspect tagging.
//
// The probability model normalizes over every label sequence; the BIO
// constraint (no I after O or at the start) is applied when decoding.
// Gold training sequences are always BIO-valid, so training drives the
// weight of the forbidden transitions down on its own.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orank/text.hpp"

namespace orank::crf {

/// Alphabet order doubles as the tie-break order of the decoder.
enum class Label : std::uint8_t { O = 0, B = 1, I = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kLabels{Label::O, Label::B, Label::I};

std::string_view to_string(Label label);  // "O", "B-ASPECT", "I-ASPECT"
/// Also accepts the bare "B" and "I" forms. Throws DomainError otherwise.
Label parse_label(std::string_view name);

/// Whether `cur` may follow `prev`; `prev` empty means sentence start.
constexpr bool transition_allowed(std::optional<Label> prev, Label cur) {
  if (cur != Label::I) return true;
  return prev.has_value() && *prev != Label::O;
}

bool is_bio_valid(std::span<const Label> labels);

using FeatureId = std::uint32_t;

/// Sparse indicator features sorted by id.
struct FeatureVector {
  std::vector<std::pair<FeatureId, double>> entries;

  bool operator==(const FeatureVector&) const = default;
};

/// Feature templates at `position`: lowercase word, POS class, prefixes and
/// suffixes of length 1-3, repeated for offsets -2..+2. Positions outside
/// the sentence produce sentinel features. A bias feature comes first.
std::vector<std::string> feature_strings(std::span<const text::TaggedToken> sentence, std::size_t position);

class FeatureDictionary {
 public:
  std::optional<FeatureId> find(std::string_view name) const;
  /// Returns the existing id or appends a new one.
  FeatureId intern(const std::string& name);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const FeatureDictionary& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, FeatureId> ids_;
};

/// Features unknown to the dictionary are dropped.
FeatureVector featurize(const FeatureDictionary& dict, std::span<const text::TaggedToken> sentence,
                        std::size_t position);

using SentenceFeatures = std::vector<FeatureVector>;

SentenceFeatures featurize_sentence(const FeatureDictionary& dict, std::span<const text::TaggedToken> sentence);

struct Hyperparams {
  double l2 = 0.1;
  int epochs = 50;
  double learning_rate = 0.1;
  std::size_t batch_size = 8;
  std::uint64_t seed = 0;

  bool operator==(const Hyperparams&) const = default;
};

/// Weights are laid out as [feature][label] emissions followed by a 3x3
/// [previous][current] transition block.
class CrfModel {
 public:
  CrfModel() = default;
  CrfModel(FeatureDictionary features, Hyperparams hyperparams);

  const FeatureDictionary& features() const { return features_; }
  const Hyperparams& hyperparams() const { return hyperparams_; }

  double emission(FeatureId f, Label y) const { return weights_[f * kNumLabels + index(y)]; }
  double transition(Label prev, Label cur) const {
    return weights_[transition_offset() + index(prev) * kNumLabels + index(cur)];
  }

  std::size_t transition_offset() const { return features_.size() * kNumLabels; }
  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }

  /// Objective reached by training; 0 for an untrained model.
  double objective() const { return objective_; }
  void set_objective(double value) { objective_ = value; }

  static constexpr std::string_view kMagic = "ORCRF1";

  void save(std::ostream& out) const;
  std::string serialize() const;
  void save_file(const std::string& path) const;
  /// Throws FormatError on a wrong magic line or a damaged body.
  static CrfModel load(std::istream& in);
  static CrfModel load_file(const std::string& path);

  bool operator==(const CrfModel&) const = default;

 private:
  static std::size_t index(Label y) { return static_cast<std::size_t>(y); }

  FeatureDictionary features_;
  Hyperparams hyperparams_;
  std::vector<double> weights_ = std::vector<double>(kNumLabels * kNumLabels, 0.0);
  double objective_ = 0.0;
};

/// Unconstrained score: emissions plus transitions along `labels`.
double sequence_score(const CrfModel& model, const SentenceFeatures& sentence, std::span<const Label> labels);

/// log of the sum of exp(score) over all 3^n label sequences, by the
/// forward recursion in log space. Throws DomainError on an empty sentence.
double forward_log_partition(const CrfModel& model, const SentenceFeatures& sentence);
double forward_log_partition(const CrfModel& model, std::span<const text::TaggedToken> sentence);

/// Viterbi over BIO-valid sequences. Ties go to the earlier label in
/// alphabet order. Empty input gives an empty result.
std::vector<Label> decode(const CrfModel& model, const SentenceFeatures& sentence);
std::vector<Label> decode(const CrfModel& model, std::span<const text::TaggedToken> sentence);

struct AnnotatedSentence {
  std::vector<text::Token> tokens;
  std::vector<Label> labels;

  bool operator==(const AnnotatedSentence&) const = default;
};

/// CoNLL-style `token<TAB>label` lines with blank lines between sentences.
/// Throws ParseError on malformed lines or BIO-invalid sentences.
std::vector<AnnotatedSentence> read_conll(std::istream& in, const std::string& source = "<conll>");
std::vector<AnnotatedSentence> read_conll_file(const std::string& path);

/// A sentence with its features resolved against a fixed dictionary.
struct PreparedSentence {
  SentenceFeatures features;
  std::vector<Label> labels;
};

std::vector<PreparedSentence> prepare(std::span<const AnnotatedSentence> corpus, const FeatureDictionary& dict,
                                      const text::OpinionLexicon& lexicon);

/// Builds a dictionary from every feature fired in the corpus, in first-seen order.
FeatureDictionary build_dictionary(std::span<const AnnotatedSentence> corpus, const text::OpinionLexicon& lexicon);

/// sum over sentences of (gold score - log Z) - l2/2 * |w|^2. When
/// `gradient` is given it is overwritten with the gradient of that sum.
double objective(const CrfModel& model, std::span<const PreparedSentence> corpus, double l2,
                 std::vector<double>* gradient = nullptr);

/// Mini-batch gradient ascent on `objective`. Throws DomainError on an empty
/// or BIO-invalid corpus and TrainingDivergenceError on a non-finite objective.
CrfModel train(std::span<const AnnotatedSentence> corpus, const Hyperparams& hyperparams,
               const text::OpinionLexicon& lexicon);

/// Fraction of tokens whose decoded label equals the gold label.
double token_accuracy(const CrfModel& model, std::span<const AnnotatedSentence> corpus,
                      const text::OpinionLexicon& lexicon);

/// Half-open [begin, end) token ranges of maximal B-I runs. A stray I
/// opens a new run.
std::vector<std::pair<std::size_t, std::size_t>> label_spans(std::span<const Label> labels);

struct AspectMention {
  std::string phrase;  // lowercase tokens joined by single spaces
  std::size_t sentence_id = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const AspectMention&) const = default;
};

std::vector<AspectMention> aspects_from_labels(std::span<const text::TaggedToken> sentence,
                                               std::span<const Label> labels);

std::vector<AspectMention> extract_aspects(const CrfModel& model,
                                           std::span<const std::vector<text::TaggedToken>> sentences);

}  // namespace orank::crf
