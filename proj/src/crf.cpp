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

#include "orank/crf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "orank/error.hpp"
#include "strings.hpp"

namespace orank::crf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Scores = std::array<double, kNumLabels>;

std::size_t idx(Label y) { return static_cast<std::size_t>(y); }

double log_sum_exp(const Scores& v) {
  double m = *std::max_element(v.begin(), v.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// E[t][y] for one sentence.
std::vector<Scores> emissions(const CrfModel& model, const SentenceFeatures& sentence) {
  std::vector<Scores> out(sentence.size());
  for (std::size_t t = 0; t < sentence.size(); ++t) {
    Scores s{};
    for (const auto& [f, v] : sentence[t].entries) {
      for (Label y : kLabels) s[idx(y)] += v * model.emission(f, y);
    }
    out[t] = s;
  }
  return out;
}

std::vector<Scores> forward(const CrfModel& model, const std::vector<Scores>& emit) {
  std::vector<Scores> alpha(emit.size());
  alpha[0] = emit[0];
  for (std::size_t t = 1; t < emit.size(); ++t) {
    for (Label cur : kLabels) {
      Scores terms{};
      for (Label prev : kLabels) terms[idx(prev)] = alpha[t - 1][idx(prev)] + model.transition(prev, cur);
      alpha[t][idx(cur)] = emit[t][idx(cur)] + log_sum_exp(terms);
    }
  }
  return alpha;
}

std::vector<Scores> backward(const CrfModel& model, const std::vector<Scores>& emit) {
  const std::size_t n = emit.size();
  std::vector<Scores> beta(n);
  beta[n - 1] = Scores{};
  for (std::size_t t = n - 1; t-- > 0;) {
    for (Label prev : kLabels) {
      Scores terms{};
      for (Label cur : kLabels) {
        terms[idx(cur)] = model.transition(prev, cur) + emit[t + 1][idx(cur)] + beta[t + 1][idx(cur)];
      }
      beta[t][idx(prev)] = log_sum_exp(terms);
    }
  }
  return beta;
}

// Log-likelihood of one sentence; adds observed minus expected counts to
// `grad` when it is non-null.
double sentence_log_likelihood(const CrfModel& model, const PreparedSentence& s, std::vector<double>* grad) {
  const auto emit = emissions(model, s.features);
  const auto alpha = forward(model, emit);
  const double log_z = log_sum_exp(alpha.back());
  const double gold = sequence_score(model, s.features, s.labels);
  if (!grad) return gold - log_z;

  const auto beta = backward(model, emit);
  auto& g = *grad;
  const std::size_t toff = model.transition_offset();
  for (std::size_t t = 0; t < emit.size(); ++t) {
    Scores marginal{};
    for (Label y : kLabels) marginal[idx(y)] = std::exp(alpha[t][idx(y)] + beta[t][idx(y)] - log_z);
    for (const auto& [f, v] : s.features[t].entries) {
      for (Label y : kLabels) {
        double observed = s.labels[t] == y ? 1.0 : 0.0;
        g[f * kNumLabels + idx(y)] += v * (observed - marginal[idx(y)]);
      }
    }
    if (t == 0) continue;
    for (Label prev : kLabels) {
      for (Label cur : kLabels) {
        double p = std::exp(alpha[t - 1][idx(prev)] + model.transition(prev, cur) + emit[t][idx(cur)] +
                            beta[t][idx(cur)] - log_z);
        double observed = (s.labels[t - 1] == prev && s.labels[t] == cur) ? 1.0 : 0.0;
        g[toff + idx(prev) * kNumLabels + idx(cur)] += observed - p;
      }
    }
  }
  return gold - log_z;
}

std::vector<text::TaggedToken> tag_tokens(const std::vector<text::Token>& tokens, const text::OpinionLexicon& lexicon) {
  return text::tag(tokens, lexicon);
}

void append_affixes(std::vector<std::string>& out, const std::string& prefix, const text::TaggedToken& tok) {
  const std::string word = text::to_lower(tok.token.surface);
  out.push_back(prefix + "word=" + word);
  out.push_back(prefix + "pos=" + std::string(text::to_string(tok.pos_class)));
  for (std::size_t len = 1; len <= 3 && len <= word.size(); ++len) {
    out.push_back(prefix + "prefix" + std::to_string(len) + "=" + word.substr(0, len));
    out.push_back(prefix + "suffix" + std::to_string(len) + "=" + word.substr(word.size() - len));
  }
}

}  // namespace

std::string_view to_string(Label label) {
  switch (label) {
    case Label::O: return "O";
    case Label::B: return "B-ASPECT";
    case Label::I: return "I-ASPECT";
  }
  return "O";
}

Label parse_label(std::string_view name) {
  if (name == "O") return Label::O;
  if (name == "B-ASPECT" || name == "B") return Label::B;
  if (name == "I-ASPECT" || name == "I") return Label::I;
  throw DomainError("unknown label '" + std::string(name) + "'");
}

bool is_bio_valid(std::span<const Label> labels) {
  std::optional<Label> prev;
  for (Label y : labels) {
    if (!transition_allowed(prev, y)) return false;
    prev = y;
  }
  return true;
}

std::vector<std::string> feature_strings(std::span<const text::TaggedToken> sentence, std::size_t position) {
  std::vector<std::string> out{"bias"};
  const auto n = static_cast<std::ptrdiff_t>(sentence.size());
  for (std::ptrdiff_t offset = -2; offset <= 2; ++offset) {
    const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(position) + offset;
    const std::string prefix = offset == 0 ? std::string() : "@" + std::string(offset > 0 ? "+" : "") +
                                                                  std::to_string(offset) + ":";
    if (p < 0) {
      out.push_back(prefix + "word=<s>");
    } else if (p >= n) {
      out.push_back(prefix + "word=</s>");
    } else {
      append_affixes(out, prefix, sentence[static_cast<std::size_t>(p)]);
    }
  }
  return out;
}

std::optional<FeatureId> FeatureDictionary::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

FeatureId FeatureDictionary::intern(const std::string& name) {
  auto [it, inserted] = ids_.try_emplace(name, static_cast<FeatureId>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

FeatureVector featurize(const FeatureDictionary& dict, std::span<const text::TaggedToken> sentence,
                        std::size_t position) {
  if (position >= sentence.size()) throw DomainError("featurize: position out of range");
  FeatureVector fv;
  for (const auto& name : feature_strings(sentence, position)) {
    if (auto id = dict.find(name)) fv.entries.emplace_back(*id, 1.0);
  }
  std::sort(fv.entries.begin(), fv.entries.end());
  fv.entries.erase(std::unique(fv.entries.begin(), fv.entries.end()), fv.entries.end());
  return fv;
}

SentenceFeatures featurize_sentence(const FeatureDictionary& dict, std::span<const text::TaggedToken> sentence) {
  SentenceFeatures out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) out.push_back(featurize(dict, sentence, i));
  return out;
}

CrfModel::CrfModel(FeatureDictionary features, Hyperparams hyperparams)
    : features_(std::move(features)),
      hyperparams_(hyperparams),
      weights_(features_.size() * kNumLabels + kNumLabels * kNumLabels, 0.0) {}

void CrfModel::save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "labels";
  for (Label y : kLabels) out << '\t' << to_string(y);
  out << '\n';
  out << "hyperparams\tl2=" << detail::format_double(hyperparams_.l2) << "\tepochs=" << hyperparams_.epochs
      << "\tlearning_rate=" << detail::format_double(hyperparams_.learning_rate)
      << "\tbatch_size=" << hyperparams_.batch_size << "\tseed=" << hyperparams_.seed << '\n';
  out << "objective\t" << detail::format_double(objective_) << '\n';
  out << "transitions";
  for (std::size_t i = 0; i < kNumLabels * kNumLabels; ++i) {
    out << '\t' << detail::format_double(weights_[transition_offset() + i]);
  }
  out << '\n';
  out << "features\t" << features_.size() << '\n';
  for (std::size_t f = 0; f < features_.size(); ++f) {
    out << detail::escape_field(features_.names()[f]);
    for (std::size_t y = 0; y < kNumLabels; ++y) out << '\t' << detail::format_double(weights_[f * kNumLabels + y]);
    out << '\n';
  }
  out << "end\n";
}

std::string CrfModel::serialize() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

void CrfModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file '" + path + "'");
  save(out);
  if (!out) throw Error("failed writing model file '" + path + "'");
}

CrfModel CrfModel::load(std::istream& in) {
  auto corrupt = [](const std::string& what) { return FormatError(FormatError::Kind::Corrupt, "CRF model: " + what); };
  std::string line;
  if (!std::getline(in, line) || detail::chomp(line) != kMagic) {
    throw FormatError(FormatError::Kind::Version, "CRF model: missing or unsupported header (want ORCRF1)");
  }
  auto next_fields = [&](std::string_view key) {
    if (!std::getline(in, line)) throw corrupt("truncated before '" + std::string(key) + "'");
    auto fields = detail::split(detail::chomp(line), '\t');
    if (fields.empty() || fields[0] != key) throw corrupt("expected '" + std::string(key) + "' line");
    return std::vector<std::string>(fields.begin() + 1, fields.end());
  };
  auto number = [&](std::string_view s) {
    auto v = detail::parse_double(s);
    if (!v || !std::isfinite(*v)) throw corrupt("bad number '" + std::string(s) + "'");
    return *v;
  };

  auto labels = next_fields("labels");
  if (labels.size() != kNumLabels) throw corrupt("label alphabet size");
  for (std::size_t y = 0; y < kNumLabels; ++y) {
    if (labels[y] != to_string(kLabels[y])) throw corrupt("label alphabet mismatch");
  }

  Hyperparams hp;
  for (const auto& kv : next_fields("hyperparams")) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw corrupt("bad hyperparameter '" + kv + "'");
    auto key = std::string_view(kv).substr(0, eq);
    auto value = std::string_view(kv).substr(eq + 1);
    if (key == "l2") {
      hp.l2 = number(value);
    } else if (key == "learning_rate") {
      hp.learning_rate = number(value);
    } else if (key == "epochs") {
      auto v = detail::parse_int<int>(value);
      if (!v) throw corrupt("bad epochs");
      hp.epochs = *v;
    } else if (key == "batch_size") {
      auto v = detail::parse_int<std::size_t>(value);
      if (!v) throw corrupt("bad batch_size");
      hp.batch_size = *v;
    } else if (key == "seed") {
      auto v = detail::parse_int<std::uint64_t>(value);
      if (!v) throw corrupt("bad seed");
      hp.seed = *v;
    } else {
      throw corrupt("unknown hyperparameter '" + std::string(key) + "'");
    }
  }

  auto objective_fields = next_fields("objective");
  if (objective_fields.size() != 1) throw corrupt("objective line");
  double objective = number(objective_fields[0]);

  auto transitions = next_fields("transitions");
  if (transitions.size() != kNumLabels * kNumLabels) throw corrupt("transition block size");

  auto count_fields = next_fields("features");
  if (count_fields.size() != 1) throw corrupt("features line");
  auto count = detail::parse_int<std::size_t>(count_fields[0]);
  if (!count) throw corrupt("bad feature count");

  FeatureDictionary dict;
  std::vector<double> emissions;
  emissions.reserve(*count * kNumLabels);
  for (std::size_t f = 0; f < *count; ++f) {
    if (!std::getline(in, line)) throw corrupt("truncated feature table");
    auto fields = detail::split(detail::chomp(line), '\t');
    if (fields.size() != 1 + kNumLabels) throw corrupt("bad feature row " + std::to_string(f));
    std::string name = detail::unescape_field(fields[0]);
    if (dict.find(name)) throw corrupt("duplicate feature '" + name + "'");
    dict.intern(name);
    for (std::size_t y = 0; y < kNumLabels; ++y) emissions.push_back(number(fields[1 + y]));
  }
  if (!std::getline(in, line) || detail::chomp(line) != "end") throw corrupt("missing end marker");

  CrfModel model(std::move(dict), hp);
  std::copy(emissions.begin(), emissions.end(), model.weights_.begin());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    model.weights_[model.transition_offset() + i] = number(transitions[i]);
  }
  model.objective_ = objective;
  return model;
}

CrfModel CrfModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  return load(in);
}

double sequence_score(const CrfModel& model, const SentenceFeatures& sentence, std::span<const Label> labels) {
  if (labels.size() != sentence.size()) throw DomainError("sequence_score: length mismatch");
  double score = 0.0;
  for (std::size_t t = 0; t < sentence.size(); ++t) {
    for (const auto& [f, v] : sentence[t].entries) score += v * model.emission(f, labels[t]);
    if (t > 0) score += model.transition(labels[t - 1], labels[t]);
  }
  return score;
}

double forward_log_partition(const CrfModel& model, const SentenceFeatures& sentence) {
  if (sentence.empty()) throw DomainError("forward_log_partition: empty sentence");
  return log_sum_exp(forward(model, emissions(model, sentence)).back());
}

double forward_log_partition(const CrfModel& model, std::span<const text::TaggedToken> sentence) {
  return forward_log_partition(model, featurize_sentence(model.features(), sentence));
}

std::vector<Label> decode(const CrfModel& model, const SentenceFeatures& sentence) {
  if (sentence.empty()) return {};
  const auto emit = emissions(model, sentence);
  const std::size_t n = emit.size();
  std::vector<Scores> delta(n);
  std::vector<std::array<std::uint8_t, kNumLabels>> back(n);

  for (Label y : kLabels) {
    delta[0][idx(y)] = transition_allowed(std::nullopt, y) ? emit[0][idx(y)] : kNegInf;
  }
  for (std::size_t t = 1; t < n; ++t) {
    for (Label cur : kLabels) {
      double best = kNegInf;
      std::uint8_t arg = 0;
      bool found = false;
      for (Label prev : kLabels) {
        if (!transition_allowed(prev, cur) || delta[t - 1][idx(prev)] == kNegInf) continue;
        double s = delta[t - 1][idx(prev)] + model.transition(prev, cur);
        if (!found || s > best) {
          best = s;
          arg = static_cast<std::uint8_t>(prev);
          found = true;
        }
      }
      delta[t][idx(cur)] = found ? best + emit[t][idx(cur)] : kNegInf;
      back[t][idx(cur)] = arg;
    }
  }

  std::size_t last = 0;
  for (std::size_t y = 1; y < kNumLabels; ++y) {
    if (delta[n - 1][y] > delta[n - 1][last]) last = y;
  }
  std::vector<Label> path(n);
  path[n - 1] = static_cast<Label>(last);
  for (std::size_t t = n - 1; t > 0; --t) path[t - 1] = static_cast<Label>(back[t][idx(path[t])]);
  return path;
}

std::vector<Label> decode(const CrfModel& model, std::span<const text::TaggedToken> sentence) {
  return decode(model, featurize_sentence(model.features(), sentence));
}

std::vector<AnnotatedSentence> read_conll(std::istream& in, const std::string& source) {
  std::vector<AnnotatedSentence> corpus;
  AnnotatedSentence current;
  std::size_t start_line = 0;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (current.tokens.empty()) return;
    if (!is_bio_valid(current.labels)) throw ParseError(source, start_line, "sentence is not BIO-valid");
    corpus.push_back(std::move(current));
    current = AnnotatedSentence{};
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::chomp(raw);
    if (detail::trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    auto tab = line.rfind('\t');
    if (tab == std::string_view::npos || tab == 0) throw ParseError(source, line_no, "expected token<TAB>label");
    auto surface = line.substr(0, tab);
    Label label;
    try {
      label = parse_label(detail::trim(line.substr(tab + 1)));
    } catch (const DomainError& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (current.tokens.empty()) start_line = line_no;
    current.tokens.push_back(text::Token{std::string(surface), current.tokens.size(), corpus.size()});
    current.labels.push_back(label);
  }
  flush();
  return corpus;
}

std::vector<AnnotatedSentence> read_conll_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open annotation file");
  return read_conll(in, path);
}

FeatureDictionary build_dictionary(std::span<const AnnotatedSentence> corpus, const text::OpinionLexicon& lexicon) {
  FeatureDictionary dict;
  for (const auto& s : corpus) {
    const auto tagged = tag_tokens(s.tokens, lexicon);
    for (std::size_t i = 0; i < tagged.size(); ++i) {
      for (const auto& name : feature_strings(tagged, i)) dict.intern(name);
    }
  }
  return dict;
}

std::vector<PreparedSentence> prepare(std::span<const AnnotatedSentence> corpus, const FeatureDictionary& dict,
                                      const text::OpinionLexicon& lexicon) {
  std::vector<PreparedSentence> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) {
    out.push_back(PreparedSentence{featurize_sentence(dict, tag_tokens(s.tokens, lexicon)), s.labels});
  }
  return out;
}

double objective(const CrfModel& model, std::span<const PreparedSentence> corpus, double l2,
                 std::vector<double>* gradient) {
  const auto w = model.weights();
  if (gradient) gradient->assign(w.size(), 0.0);
  double total = 0.0;
  for (const auto& s : corpus) {
    if (s.features.empty()) continue;
    total += sentence_log_likelihood(model, s, gradient);
  }
  double norm = 0.0;
  for (double x : w) norm += x * x;
  total -= 0.5 * l2 * norm;
  if (gradient) {
    for (std::size_t i = 0; i < w.size(); ++i) (*gradient)[i] -= l2 * w[i];
  }
  return total;
}

CrfModel train(std::span<const AnnotatedSentence> corpus, const Hyperparams& hp, const text::OpinionLexicon& lexicon) {
  if (corpus.empty()) throw DomainError("train: empty corpus");
  for (const auto& s : corpus) {
    if (s.tokens.size() != s.labels.size()) throw DomainError("train: token/label length mismatch");
    if (!is_bio_valid(s.labels)) throw DomainError("train: corpus contains a BIO-invalid sentence");
  }
  if (hp.batch_size == 0 || hp.epochs < 0 || !(hp.learning_rate > 0.0) || !(hp.l2 >= 0.0)) {
    throw DomainError("train: invalid hyperparameters");
  }

  CrfModel model(build_dictionary(corpus, lexicon), hp);
  const auto data = prepare(corpus, model.features(), lexicon);
  const std::size_t n = data.size();

  std::mt19937_64 rng(hp.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(model.weights().size());
  // Proximal L2 step: stable for any l2, and the fixed point matches the
  // stationary point of the regularized objective.
  const double shrink = 1.0 / (1.0 + hp.learning_rate * hp.l2 / static_cast<double>(n));

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    // Fisher-Yates with the raw engine output, identical on every platform.
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

    for (std::size_t start = 0; start < n; start += hp.batch_size) {
      const std::size_t stop = std::min(n, start + hp.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t k = start; k < stop; ++k) {
        const auto& s = data[order[k]];
        if (s.features.empty()) continue;
        double ll = sentence_log_likelihood(model, s, &grad);
        if (!std::isfinite(ll)) throw TrainingDivergenceError("train: non-finite log-likelihood");
      }
      const double step = hp.learning_rate / static_cast<double>(stop - start);
      auto w = model.weights();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (w[i] + step * grad[i]) * shrink;
    }
  }

  const double final_objective = objective(model, data, hp.l2);
  if (!std::isfinite(final_objective)) throw TrainingDivergenceError("train: objective is not finite");
  for (double x : model.weights()) {
    if (!std::isfinite(x)) throw TrainingDivergenceError("train: weights diverged");
  }
  model.set_objective(final_objective);
  return model;
}

double token_accuracy(const CrfModel& model, std::span<const AnnotatedSentence> corpus,
                      const text::OpinionLexicon& lexicon) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& s : corpus) {
    const auto predicted = decode(model, text::tag(s.tokens, lexicon));
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      ++total;
      if (predicted[i] == s.labels[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<std::pair<std::size_t, std::size_t>> label_spans(std::span<const Label> labels) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::optional<std::size_t> open;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label y = labels[i];
    if (y == Label::B || (y == Label::I && !open)) {
      if (open) spans.emplace_back(*open, i);
      open = i;
    } else if (y == Label::O && open) {
      spans.emplace_back(*open, i);
      open.reset();
    }
  }
  if (open) spans.emplace_back(*open, labels.size());
  return spans;
}

std::vector<AspectMention> aspects_from_labels(std::span<const text::TaggedToken> sentence,
                                               std::span<const Label> labels) {
  if (sentence.size() != labels.size()) throw DomainError("aspects_from_labels: length mismatch");
  std::vector<AspectMention> out;
  for (auto [begin, end] : label_spans(labels)) {
    AspectMention m;
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) m.phrase += ' ';
      m.phrase += text::to_lower(sentence[i].token.surface);
    }
    m.sentence_id = sentence[begin].token.sentence_id;
    m.begin = begin;
    m.end = end;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<AspectMention> extract_aspects(const CrfModel& model,
                                           std::span<const std::vector<text::TaggedToken>> sentences) {
  std::vector<AspectMention> out;
  for (const auto& sentence : sentences) {
    const auto labels = decode(model, sentence);
    auto mentions = aspects_from_labels(sentence, labels);
    out.insert(out.end(), std::make_move_iterator(mentions.begin()), std::make_move_iterator(mentions.end()));
  }
  return out;
}

}  // namespace orank::crf
