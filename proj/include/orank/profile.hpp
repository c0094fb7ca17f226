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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orank/crf.hpp"
#include "orank/fuzzy.hpp"
#include "orank/text.hpp"

namespace orank::profile {

struct Review {
  std::string review_id;
  std::string entity_id;
  std::string text;

  bool operator==(const Review&) const = default;
};

struct AssessedUnit {
  text::OpinionUnit unit;
  fuzzy::SentimentAssessment assessment;

  bool operator==(const AssessedUnit&) const = default;
};

struct AspectOpinion {
  std::string aspect;  // lowercase phrase
  fuzzy::Orientation orientation = fuzzy::Orientation::Neutral;
  double strength = 0.0;
  fuzzy::Granularity granularity = fuzzy::Granularity::VeryWeak;
  std::string review_id;
  std::size_t sentence_id = 0;
  /// Lowercase modifier (if any) and adjective of the paired unit.
  std::vector<std::string> opinion_words;

  bool operator==(const AspectOpinion&) const = default;
};

/// Pairs each aspect with the nearest opinion unit of its sentence, measured
/// from the aspect span to the unit's adjective; ties go to the earlier unit.
/// Aspects without a unit in their sentence are dropped, as are unused units.
std::vector<AspectOpinion> pair(std::span<const crf::AspectMention> aspects, std::span<const AssessedUnit> units,
                                std::string_view review_id);

struct AspectSummary {
  fuzzy::Orientation orientation = fuzzy::Orientation::Neutral;  // majority; tie -> Neutral
  double mean_strength = 0.0;
  fuzzy::Granularity granularity = fuzzy::Granularity::VeryWeak;  // of the mean
  std::size_t mention_count = 0;

  bool operator==(const AspectSummary&) const = default;
};

struct EntityProfile {
  std::string entity_id;
  std::map<std::string, AspectSummary> aspects;
  std::size_t review_count = 0;

  const AspectSummary* find(std::string_view aspect) const;
  bool operator==(const EntityProfile&) const = default;
};

/// Order-independent: strengths are summed in sorted order.
EntityProfile summarize(std::string entity_id, std::span<const AspectOpinion> opinions, std::size_t review_count,
                        const fuzzy::GranularityIntervals& intervals = {});

/// Everything needed to turn text into aspect opinions.
struct Pipeline {
  text::OpinionLexicon lexicon = text::OpinionLexicon::builtin();
  crf::CrfModel model;
  fuzzy::FuzzyConfig fuzzy;

  /// Fingerprint of lexicon, model and fuzzy configuration.
  std::string digest() const;
};

struct ReviewAnalysis {
  std::vector<std::vector<text::TaggedToken>> sentences;
  std::vector<crf::AspectMention> aspects;
  std::vector<AssessedUnit> units;
  std::vector<AspectOpinion> opinions;
};

/// tokenize -> tag -> decode aspects and extract opinion units -> assess -> pair.
ReviewAnalysis analyze(std::string_view text, std::string_view review_id, const Pipeline& pipeline);

}  // namespace orank::profile
