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

#include <array>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "orank/error.hpp"
#include "orank/text.hpp"

namespace orank::fuzzy {

inline constexpr double kUniverseMin = 0.0;
inline constexpr double kUniverseMax = 10.0;

/// Triangle with feet at a and c and its peak at b. A degenerate side
/// (a == b or b == c) is a vertical edge, so mu(b) is always 1.
class TriangularMF {
 public:
  constexpr TriangularMF() = default;
  /// Throws DomainError unless a <= b <= c.
  TriangularMF(double a, double b, double c);

  double operator()(double x) const {
    if (x < a_ || x > c_) return 0.0;
    if (x == b_) return 1.0;
    if (x < b_) return (x - a_) / (b_ - a_);
    return (c_ - x) / (c_ - b_);
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  bool operator==(const TriangularMF&) const = default;

 private:
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
};

enum class Level { Low = 0, Moderate = 1, High = 2 };

enum class Granularity { VeryWeak = 0, Weak = 1, Moderate = 2, Strong = 3, VeryStrong = 4 };

inline constexpr std::size_t kLevels = 3;
inline constexpr std::size_t kGranularities = 5;

std::string_view to_string(Level level);
/// Snake-case names: very_weak, weak, moderate, strong, very_strong.
std::string_view to_string(Granularity g);
/// Throws DomainError on an unknown name.
Granularity parse_granularity(std::string_view name);

struct InputPartition {
  TriangularMF low{0.0, 0.0, 5.0};
  TriangularMF moderate{2.5, 5.0, 7.5};
  TriangularMF high{5.0, 10.0, 10.0};

  const TriangularMF& operator[](Level level) const;
  bool operator==(const InputPartition&) const = default;
};

struct OutputPartition {
  std::array<TriangularMF, kGranularities> terms{{
      {0.0, 0.0, 2.5},
      {0.0, 2.5, 5.0},
      {2.5, 5.0, 7.5},
      {5.0, 7.5, 10.0},
      {7.5, 10.0, 10.0},
  }};

  const TriangularMF& operator[](Granularity g) const { return terms[static_cast<std::size_t>(g)]; }
  bool operator==(const OutputPartition&) const = default;
};

/// Mamdani rule tables. `with_modifier` is indexed [adverb level][adjective level].
struct RuleBase {
  using G = Granularity;
  std::array<std::array<Granularity, kLevels>, kLevels> with_modifier{{
      {G::VeryWeak, G::Weak, G::Moderate},
      {G::Weak, G::Moderate, G::Strong},
      {G::Moderate, G::Strong, G::VeryStrong},
  }};
  std::array<Granularity, kLevels> without_modifier{G::Weak, G::Moderate, G::Strong};

  /// Raising either antecedent level never lowers the consequent.
  bool is_monotone() const;
  bool operator==(const RuleBase&) const = default;
};

/// Lower edges of weak, moderate, strong and very_strong. Each label owns
/// the left-closed interval starting at its edge; very_weak starts at 0.
struct GranularityIntervals {
  std::array<double, kGranularities - 1> edges{2.0, 4.0, 6.0, 8.0};

  Granularity classify(double strength) const;
  bool operator==(const GranularityIntervals&) const = default;
};

/// How antecedent memberships combine into a firing strength.
enum class Conjunction { Minimum, Product };
/// How a firing strength shapes its consequent: clip at the strength or
/// scale by it.
enum class Implication { Clip, Scale };

std::string_view to_string(Conjunction c);
std::string_view to_string(Implication i);

/// Defaults use product conjunction with scaling implication: with the
/// default partitions the min/clip pair lets Y* dip slightly as an
/// antecedent degree rises (for example adjective 4, adverb 2 -> 2.5).
struct FuzzyConfig {
  InputPartition input;
  OutputPartition output;
  RuleBase rules;
  GranularityIntervals intervals;
  Conjunction conjunction = Conjunction::Product;
  Implication implication = Implication::Scale;
  double integration_step = 0.01;

  /// Throws DomainError when coverage, ordering or monotonicity fails.
  void validate() const;

  /// Plain-text `key = value` form; see README for the keys.
  static FuzzyConfig load(std::istream& in, const std::string& source = "<fuzzy config>");
  static FuzzyConfig load_file(const std::string& path);
  void save(std::ostream& out) const;
  std::string serialize() const;

  bool operator==(const FuzzyConfig&) const = default;
};

struct Memberships {
  double low = 0.0;
  double moderate = 0.0;
  double high = 0.0;

  double operator[](Level level) const;
  bool operator==(const Memberships&) const = default;
};

/// Throws DomainError unless 0 <= degree <= 10.
Memberships fuzzify(double degree, const InputPartition& partition);

/// Max-aggregate of output terms, each clipped at or scaled by its firing
/// strength.
class OutputMembership {
 public:
  explicit OutputMembership(OutputPartition partition = {}, Implication implication = Implication::Clip)
      : partition_(partition), implication_(implication) {}

  /// Aggregates by max when the same consequent fires twice.
  void fire(Granularity consequent, double strength);

  double operator()(double y) const;

  /// Firing strength of a consequent, 0 when it did not fire.
  double strength(Granularity g) const { return strength_[static_cast<std::size_t>(g)]; }
  const OutputPartition& partition() const { return partition_; }
  Implication implication() const { return implication_; }
  bool any_fired() const;

 private:
  OutputPartition partition_;
  Implication implication_;
  std::array<double, kGranularities> strength_{};
};

/// Fires every rule of the table selected by whether the unit has a
/// modifier, combining antecedents with the configured conjunction.
OutputMembership infer(const text::OpinionUnit& unit, const FuzzyConfig& config);
OutputMembership infer(double adjective_degree, const double* adverb_degree, const FuzzyConfig& config);

/// Centroid by the midpoint rule on [lo, hi] with the given step. Throws
/// NoOpinionError when the membership has no mass on the grid.
template <typename Membership>
  requires std::invocable<const Membership&, double>
double defuzzify(const Membership& mu, double step = 0.01, double lo = kUniverseMin,
                 double hi = kUniverseMax) {
  if (!(step > 0.0) || !(hi > lo)) throw DomainError("defuzzify: bad integration grid");
  const auto n = static_cast<std::size_t>((hi - lo) / step + 0.5);
  double moment = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = lo + (static_cast<double>(i) + 0.5) * step;
    const double m = static_cast<double>(mu(y));
    moment += y * m;
    mass += m;
  }
  if (!(mass > 0.0)) throw NoOpinionError("output membership is identically zero");
  return moment / mass;
}

enum class Orientation { Positive, Negative, Neutral };

std::string_view to_string(Orientation o);
/// Accepts "positive"/"negative"/"neutral" and the short forms pos/neg/neu.
Orientation parse_orientation(std::string_view name);

struct SentimentAssessment {
  Orientation orientation = Orientation::Neutral;
  double strength = 0.0;  // crisp centroid on [0, 10]
  Granularity granularity = Granularity::VeryWeak;

  bool operator==(const SentimentAssessment&) const = default;
};

/// Orientation from the adjective polarity (flipped when negated), strength
/// from inference plus centroid. Inference yielding no mass gives a
/// Neutral assessment with strength 0.
SentimentAssessment assess(const text::OpinionUnit& unit, const FuzzyConfig& config);

}  // namespace orank::fuzzy
