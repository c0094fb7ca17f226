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

#include "orank/fuzzy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "strings.hpp"

namespace orank::fuzzy {

TriangularMF::TriangularMF(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!(a <= b && b <= c)) {
    throw DomainError("triangular membership requires a <= b <= c");
  }
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Low: return "low";
    case Level::Moderate: return "moderate";
    case Level::High: return "high";
  }
  return "low";
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::VeryWeak: return "very_weak";
    case Granularity::Weak: return "weak";
    case Granularity::Moderate: return "moderate";
    case Granularity::Strong: return "strong";
    case Granularity::VeryStrong: return "very_strong";
  }
  return "very_weak";
}

Granularity parse_granularity(std::string_view name) {
  for (std::size_t i = 0; i < kGranularities; ++i) {
    auto g = static_cast<Granularity>(i);
    if (to_string(g) == name) return g;
  }
  throw DomainError("unknown granularity '" + std::string(name) + "'");
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
    case Orientation::Neutral: return "neutral";
  }
  return "neutral";
}

Orientation parse_orientation(std::string_view name) {
  if (name == "positive" || name == "pos") return Orientation::Positive;
  if (name == "negative" || name == "neg") return Orientation::Negative;
  if (name == "neutral" || name == "neu") return Orientation::Neutral;
  throw DomainError("unknown orientation '" + std::string(name) + "'");
}

std::string_view to_string(Conjunction c) { return c == Conjunction::Minimum ? "min" : "product"; }

std::string_view to_string(Implication i) { return i == Implication::Clip ? "clip" : "scale"; }

const TriangularMF& InputPartition::operator[](Level level) const {
  switch (level) {
    case Level::Low: return low;
    case Level::Moderate: return moderate;
    case Level::High: return high;
  }
  return low;
}

double Memberships::operator[](Level level) const {
  switch (level) {
    case Level::Low: return low;
    case Level::Moderate: return moderate;
    case Level::High: return high;
  }
  return 0.0;
}

bool RuleBase::is_monotone() const {
  auto rank = [](Granularity g) { return static_cast<int>(g); };
  for (std::size_t i = 0; i < kLevels; ++i) {
    for (std::size_t j = 0; j < kLevels; ++j) {
      if (i + 1 < kLevels && rank(with_modifier[i + 1][j]) < rank(with_modifier[i][j])) return false;
      if (j + 1 < kLevels && rank(with_modifier[i][j + 1]) < rank(with_modifier[i][j])) return false;
    }
    if (i + 1 < kLevels && rank(without_modifier[i + 1]) < rank(without_modifier[i])) return false;
  }
  return true;
}

Granularity GranularityIntervals::classify(double strength) const {
  std::size_t label = 0;
  while (label < edges.size() && strength >= edges[label]) ++label;
  return static_cast<Granularity>(label);
}

namespace {

// Coverage is checked on a fine grid plus every breakpoint.
template <typename Terms>
bool covers_universe(const Terms& terms) {
  std::vector<double> xs;
  for (int i = 0; i <= 10000; ++i) xs.push_back(i * 0.001);
  for (const auto& t : terms) {
    for (double v : {t.a(), t.b(), t.c()}) {
      if (v >= kUniverseMin && v <= kUniverseMax) xs.push_back(v);
    }
  }
  return std::all_of(xs.begin(), xs.end(), [&](double x) {
    return std::any_of(terms.begin(), terms.end(), [&](const TriangularMF& t) { return t(x) > 0.0; });
  });
}

std::string mf_string(const TriangularMF& mf) {
  return detail::format_double(mf.a()) + " " + detail::format_double(mf.b()) + " " +
         detail::format_double(mf.c());
}

}  // namespace

void FuzzyConfig::validate() const {
  std::array<TriangularMF, 3> in{input.low, input.moderate, input.high};
  if (!covers_universe(in)) throw DomainError("input partition leaves part of [0,10] uncovered");
  if (!covers_universe(output.terms)) throw DomainError("output partition leaves part of [0,10] uncovered");
  for (std::size_t i = 1; i < kGranularities; ++i) {
    if (!(output.terms[i].b() > output.terms[i - 1].b())) {
      throw DomainError("output partition peaks must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < intervals.edges.size(); ++i) {
    double lo = i == 0 ? kUniverseMin : intervals.edges[i - 1];
    if (!(intervals.edges[i] > lo && intervals.edges[i] <= kUniverseMax)) {
      throw DomainError("granularity interval edges must be strictly increasing within (0,10]");
    }
  }
  if (!rules.is_monotone()) throw DomainError("rule base is not monotone");
  if (!(integration_step > 0.0 && integration_step <= 1.0)) {
    throw DomainError("integration_step must lie in (0,1]");
  }
}

FuzzyConfig FuzzyConfig::load(std::istream& in, const std::string& source) {
  FuzzyConfig config;
  std::string raw;
  std::size_t line_no = 0;

  auto level_of = [](std::string_view s) -> int {
    if (s == "low") return 0;
    if (s == "moderate") return 1;
    if (s == "high") return 2;
    return -1;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::trim(detail::chomp(raw));
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = detail::trim(line.substr(0, hash));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected 'key = value'");
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    auto words = detail::split_ws(value);

    auto numbers = [&](std::size_t count) {
      if (words.size() != count) {
        throw ParseError(source, line_no, "'" + std::string(key) + "' expects " + std::to_string(count) + " numbers");
      }
      std::vector<double> out;
      for (auto w : words) {
        auto v = detail::parse_double(w);
        if (!v) throw ParseError(source, line_no, "bad number '" + std::string(w) + "'");
        out.push_back(*v);
      }
      return out;
    };
    auto triangle = [&] {
      auto v = numbers(3);
      try {
        return TriangularMF(v[0], v[1], v[2]);
      } catch (const DomainError& e) {
        throw ParseError(source, line_no, e.what());
      }
    };
    auto granularity = [&] {
      if (words.size() != 1) throw ParseError(source, line_no, "expected one granularity name");
      try {
        return parse_granularity(words[0]);
      } catch (const DomainError& e) {
        throw ParseError(source, line_no, e.what());
      }
    };

    if (key == "input.low") {
      config.input.low = triangle();
    } else if (key == "input.moderate") {
      config.input.moderate = triangle();
    } else if (key == "input.high") {
      config.input.high = triangle();
    } else if (key.starts_with("output.")) {
      Granularity g;
      try {
        g = parse_granularity(key.substr(7));
      } catch (const DomainError&) {
        throw ParseError(source, line_no, "unknown key '" + std::string(key) + "'");
      }
      config.output.terms[static_cast<std::size_t>(g)] = triangle();
    } else if (key.starts_with("rule.")) {
      auto parts = detail::split(key, '.');
      if (parts.size() != 3) throw ParseError(source, line_no, "rule keys are rule.<adverb>.<adjective>");
      int adj = level_of(parts[2]);
      if (adj < 0) throw ParseError(source, line_no, "unknown adjective level '" + std::string(parts[2]) + "'");
      if (parts[1] == "none") {
        config.rules.without_modifier[adj] = granularity();
      } else {
        int adv = level_of(parts[1]);
        if (adv < 0) throw ParseError(source, line_no, "unknown adverb level '" + std::string(parts[1]) + "'");
        config.rules.with_modifier[adv][adj] = granularity();
      }
    } else if (key == "intervals") {
      auto v = numbers(4);
      std::copy(v.begin(), v.end(), config.intervals.edges.begin());
    } else if (key == "conjunction") {
      if (words.size() == 1 && words[0] == "min") {
        config.conjunction = Conjunction::Minimum;
      } else if (words.size() == 1 && words[0] == "product") {
        config.conjunction = Conjunction::Product;
      } else {
        throw ParseError(source, line_no, "conjunction must be min or product");
      }
    } else if (key == "implication") {
      if (words.size() == 1 && words[0] == "clip") {
        config.implication = Implication::Clip;
      } else if (words.size() == 1 && words[0] == "scale") {
        config.implication = Implication::Scale;
      } else {
        throw ParseError(source, line_no, "implication must be clip or scale");
      }
    } else if (key == "integration_step") {
      config.integration_step = numbers(1)[0];
    } else {
      throw ParseError(source, line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  return config;
}

FuzzyConfig FuzzyConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open fuzzy config");
  return load(in, path);
}

void FuzzyConfig::save(std::ostream& out) const {
  out << "input.low = " << mf_string(input.low) << '\n'
      << "input.moderate = " << mf_string(input.moderate) << '\n'
      << "input.high = " << mf_string(input.high) << '\n';
  for (std::size_t g = 0; g < kGranularities; ++g) {
    out << "output." << to_string(static_cast<Granularity>(g)) << " = " << mf_string(output.terms[g]) << '\n';
  }
  for (std::size_t adv = 0; adv < kLevels; ++adv) {
    for (std::size_t adj = 0; adj < kLevels; ++adj) {
      out << "rule." << to_string(static_cast<Level>(adv)) << '.' << to_string(static_cast<Level>(adj))
          << " = " << to_string(rules.with_modifier[adv][adj]) << '\n';
    }
  }
  for (std::size_t adj = 0; adj < kLevels; ++adj) {
    out << "rule.none." << to_string(static_cast<Level>(adj)) << " = " << to_string(rules.without_modifier[adj])
        << '\n';
  }
  out << "intervals =";
  for (double e : intervals.edges) out << ' ' << detail::format_double(e);
  out << "\nconjunction = " << to_string(conjunction) << "\nimplication = " << to_string(implication);
  out << "\nintegration_step = " << detail::format_double(integration_step) << '\n';
}

std::string FuzzyConfig::serialize() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

Memberships fuzzify(double degree, const InputPartition& partition) {
  if (!(degree >= kUniverseMin && degree <= kUniverseMax)) {
    throw DomainError("fuzzify: degree outside [0,10]");
  }
  return {partition.low(degree), partition.moderate(degree), partition.high(degree)};
}

void OutputMembership::fire(Granularity consequent, double strength) {
  auto& s = strength_[static_cast<std::size_t>(consequent)];
  s = std::max(s, strength);
}

double OutputMembership::operator()(double y) const {
  double out = 0.0;
  for (std::size_t g = 0; g < kGranularities; ++g) {
    const double s = strength_[g];
    if (!(s > 0.0)) continue;
    const double mu = partition_.terms[g](y);
    out = std::max(out, implication_ == Implication::Clip ? std::min(s, mu) : s * mu);
  }
  return out;
}

bool OutputMembership::any_fired() const {
  return std::any_of(strength_.begin(), strength_.end(), [](double s) { return s > 0.0; });
}

OutputMembership infer(double adjective_degree, const double* adverb_degree, const FuzzyConfig& config) {
  OutputMembership out(config.output, config.implication);
  const auto adj = fuzzify(adjective_degree, config.input);
  if (adverb_degree == nullptr) {
    for (std::size_t j = 0; j < kLevels; ++j) {
      double s = adj[static_cast<Level>(j)];
      if (s > 0.0) out.fire(config.rules.without_modifier[j], s);
    }
    return out;
  }
  const auto adv = fuzzify(*adverb_degree, config.input);
  for (std::size_t i = 0; i < kLevels; ++i) {
    for (std::size_t j = 0; j < kLevels; ++j) {
      const double a = adv[static_cast<Level>(i)];
      const double b = adj[static_cast<Level>(j)];
      const double s = config.conjunction == Conjunction::Minimum ? std::min(a, b) : a * b;
      if (s > 0.0) out.fire(config.rules.with_modifier[i][j], s);
    }
  }
  return out;
}

OutputMembership infer(const text::OpinionUnit& unit, const FuzzyConfig& config) {
  if (unit.modifier) return infer(unit.degree, &unit.modifier->degree, config);
  return infer(unit.degree, nullptr, config);
}

SentimentAssessment assess(const text::OpinionUnit& unit, const FuzzyConfig& config) {
  SentimentAssessment result;
  try {
    result.strength = defuzzify(infer(unit, config), config.integration_step);
  } catch (const NoOpinionError&) {
    return result;
  }
  bool positive = unit.polarity == text::Polarity::Positive;
  if (unit.negated) positive = !positive;
  result.orientation = positive ? Orientation::Positive : Orientation::Negative;
  result.granularity = config.intervals.classify(result.strength);
  return result;
}

}  // namespace orank::fuzzy
