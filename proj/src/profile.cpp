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

#include "orank/profile.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "strings.hpp"

namespace orank::profile {

namespace {

std::size_t distance(const crf::AspectMention& aspect, std::size_t position) {
  if (position < aspect.begin) return aspect.begin - position;
  if (position >= aspect.end) return position - (aspect.end - 1);
  return 0;
}

}  // namespace

std::vector<AspectOpinion> pair(std::span<const crf::AspectMention> aspects, std::span<const AssessedUnit> units,
                                std::string_view review_id) {
  std::vector<AspectOpinion> out;
  for (const auto& aspect : aspects) {
    const AssessedUnit* best = nullptr;
    std::size_t best_distance = 0;
    std::size_t best_position = 0;
    for (const auto& u : units) {
      if (u.unit.sentence_id != aspect.sentence_id) continue;
      const std::size_t pos = u.unit.adjective.token.position;
      const std::size_t d = distance(aspect, pos);
      if (!best || d < best_distance || (d == best_distance && pos < best_position)) {
        best = &u;
        best_distance = d;
        best_position = pos;
      }
    }
    if (!best) continue;

    AspectOpinion op;
    op.aspect = aspect.phrase;
    op.orientation = best->assessment.orientation;
    op.strength = best->assessment.strength;
    op.granularity = best->assessment.granularity;
    op.review_id = std::string(review_id);
    op.sentence_id = aspect.sentence_id;
    if (best->unit.modifier) op.opinion_words.push_back(text::to_lower(best->unit.modifier->token.token.surface));
    op.opinion_words.push_back(text::to_lower(best->unit.adjective.token.surface));
    out.push_back(std::move(op));
  }
  return out;
}

const AspectSummary* EntityProfile::find(std::string_view aspect) const {
  auto it = aspects.find(std::string(aspect));
  return it == aspects.end() ? nullptr : &it->second;
}

EntityProfile summarize(std::string entity_id, std::span<const AspectOpinion> opinions, std::size_t review_count,
                        const fuzzy::GranularityIntervals& intervals) {
  struct Tally {
    std::vector<double> strengths;
    std::size_t positive = 0;
    std::size_t negative = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& op : opinions) {
    auto& t = tallies[op.aspect];
    t.strengths.push_back(op.strength);
    if (op.orientation == fuzzy::Orientation::Positive) ++t.positive;
    if (op.orientation == fuzzy::Orientation::Negative) ++t.negative;
  }

  EntityProfile profile;
  profile.entity_id = std::move(entity_id);
  profile.review_count = review_count;
  for (auto& [aspect, t] : tallies) {
    std::sort(t.strengths.begin(), t.strengths.end());
    double sum = 0.0;
    for (double s : t.strengths) sum += s;
    AspectSummary summary;
    summary.mention_count = t.strengths.size();
    // Clamp guards the last-ulp drift of the mean outside [min, max].
    summary.mean_strength = std::clamp(sum / static_cast<double>(summary.mention_count), t.strengths.front(),
                                       t.strengths.back());
    summary.granularity = intervals.classify(summary.mean_strength);
    if (t.positive > t.negative) {
      summary.orientation = fuzzy::Orientation::Positive;
    } else if (t.negative > t.positive) {
      summary.orientation = fuzzy::Orientation::Negative;
    } else {
      summary.orientation = fuzzy::Orientation::Neutral;
    }
    profile.aspects.emplace(aspect, summary);
  }
  return profile;
}

std::string Pipeline::digest() const {
  std::uint64_t h = detail::fnv1a(lexicon.serialize());
  h = detail::fnv1a(model.serialize(), h);
  h = detail::fnv1a(fuzzy.serialize(), h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ReviewAnalysis analyze(std::string_view text_in, std::string_view review_id, const Pipeline& pipeline) {
  ReviewAnalysis out;
  for (const auto& sentence : text::tokenize(text_in)) {
    out.sentences.push_back(text::tag(sentence, pipeline.lexicon));
  }
  out.aspects = crf::extract_aspects(pipeline.model, out.sentences);
  for (const auto& tagged : out.sentences) {
    for (auto& unit : text::extract_opinion_units(tagged, pipeline.lexicon)) {
      auto assessment = fuzzy::assess(unit, pipeline.fuzzy);
      out.units.push_back(AssessedUnit{std::move(unit), assessment});
    }
  }
  out.opinions = pair(out.aspects, out.units, review_id);
  return out;
}

}  // namespace orank::profile
