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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <string>

#include "orank/corpus.hpp"
#include "orank/crf.hpp"
#include "orank/error.hpp"
#include "orank/eval.hpp"
#include "orank/fuzzy.hpp"
#include "orank/profile.hpp"
#include "orank/rank.hpp"
#include "orank/text.hpp"

namespace py = pybind11;
using namespace orank;

namespace {

std::string str(std::string_view s) { return std::string(s); }

py::dict assessment_dict(const fuzzy::SentimentAssessment& a) {
  py::dict d;
  d["orientation"] = str(fuzzy::to_string(a.orientation));
  d["strength"] = a.strength;
  d["granularity"] = str(fuzzy::to_string(a.granularity));
  return d;
}

py::dict analysis_dict(const profile::ReviewAnalysis& r) {
  py::list aspects;
  for (const auto& a : r.aspects) {
    py::dict d;
    d["phrase"] = a.phrase;
    d["sentence"] = a.sentence_id;
    d["begin"] = a.begin;
    d["end"] = a.end;
    aspects.append(d);
  }
  py::list units;
  for (const auto& u : r.units) {
    py::dict d = assessment_dict(u.assessment);
    d["adjective"] = u.unit.adjective.token.surface;
    d["modifier"] = u.unit.modifier ? py::object(py::str(u.unit.modifier->token.token.surface)) : py::none();
    d["negated"] = u.unit.negated;
    d["sentence"] = u.unit.sentence_id;
    units.append(d);
  }
  py::list opinions;
  for (const auto& o : r.opinions) {
    py::dict d;
    d["aspect"] = o.aspect;
    d["orientation"] = str(fuzzy::to_string(o.orientation));
    d["strength"] = o.strength;
    d["granularity"] = str(fuzzy::to_string(o.granularity));
    d["words"] = o.opinion_words;
    opinions.append(d);
  }
  py::dict out;
  out["aspects"] = aspects;
  out["units"] = units;
  out["opinions"] = opinions;
  return out;
}

rank::RankOptions rank_options(double k1, double b, const std::string& tier_mode, int tolerance, bool use_tiers) {
  rank::RankOptions o;
  o.bm25 = {k1, b};
  o.bm25.validate();
  if (tier_mode == "conjunctive") {
    o.mode = rank::TierMode::Conjunctive;
  } else if (tier_mode == "average") {
    o.mode = rank::TierMode::Average;
  } else {
    throw DomainError("tier_mode must be conjunctive or average");
  }
  o.strength_tolerance = tolerance;
  o.use_tiers = use_tiers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_orank, m) {
  m.doc() = "Opinion-based entity ranking: aspect tagging, fuzzy opinion strength, tiered BM25.";

  auto base = py::register_exception<Error>(m, "OrankError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<FormatError>(m, "FormatError", base);
  py::register_exception<EmptyQueryError>(m, "EmptyQueryError", base);
  py::register_exception<eval::UnmatchedQueryError>(m, "UnmatchedQueryError", base);
  py::register_exception<TrainingDivergenceError>(m, "TrainingDivergenceError", base);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<text::OpinionLexicon>(m, "Lexicon")
      .def_static("builtin", [] { return text::OpinionLexicon::builtin(); })
      .def_static("load", &text::OpinionLexicon::load_file, py::arg("path"))
      .def("serialize", &text::OpinionLexicon::serialize)
      .def("add",
           [](text::OpinionLexicon& lex, const std::string& lemma, double degree, const std::string& polarity,
              const std::string& pos) {
             lex.add(lemma, {degree, polarity == "negative" ? text::Polarity::Negative : text::Polarity::Positive,
                             pos == "adverb" ? text::PosClass::Adverb : text::PosClass::Adjective});
           },
           py::arg("lemma"), py::arg("degree"), py::arg("polarity") = "positive", py::arg("pos") = "adjective")
      .def("find",
           [](const text::OpinionLexicon& lex, const std::string& word) -> py::object {
             const auto* e = lex.find(text::to_lower(word));
             if (!e) return py::none();
             py::dict d;
             d["degree"] = e->degree;
             d["polarity"] = str(text::to_string(e->polarity));
             d["pos"] = str(text::to_string(e->pos_class));
             return d;
           })
      .def("__len__", &text::OpinionLexicon::size);

  py::class_<fuzzy::FuzzyConfig>(m, "FuzzyConfig")
      .def(py::init<>())
      .def_static("load", &fuzzy::FuzzyConfig::load_file, py::arg("path"))
      .def("serialize", &fuzzy::FuzzyConfig::serialize)
      .def_property_readonly("conjunction", [](const fuzzy::FuzzyConfig& c) { return str(to_string(c.conjunction)); })
      .def_property_readonly("implication", [](const fuzzy::FuzzyConfig& c) { return str(to_string(c.implication)); });

  py::class_<crf::CrfModel>(m, "CrfModel")
      .def(py::init<>())
      .def_static("load", &crf::CrfModel::load_file, py::arg("path"))
      .def("save", &crf::CrfModel::save_file, py::arg("path"))
      .def("serialize", &crf::CrfModel::serialize)
      .def_property_readonly("objective", &crf::CrfModel::objective)
      .def_property_readonly("num_features", [](const crf::CrfModel& c) { return c.features().size(); })
      .def("decode", [](const crf::CrfModel& model, const std::string& sentence) {
        std::vector<std::string> out;
        for (const auto& s : text::tokenize(sentence)) {
          for (auto y : crf::decode(model, text::tag(s, text::OpinionLexicon::builtin()))) out.push_back(str(to_string(y)));
        }
        return out;
      });

  m.def(
      "train_crf",
      [](const std::string& path, double l2, int epochs, double learning_rate, std::size_t batch_size,
         std::uint64_t seed, std::optional<text::OpinionLexicon> lexicon) {
        crf::Hyperparams hp{l2, epochs, learning_rate, batch_size, seed};
        const auto& lex = lexicon ? *lexicon : text::OpinionLexicon::builtin();
        auto corpus = crf::read_conll_file(path);
        crf::CrfModel model;
        double acc = 0.0;
        {
          py::gil_scoped_release release;
          model = crf::train(corpus, hp, lex);
          acc = crf::token_accuracy(model, corpus, lex);
        }
        return py::make_tuple(std::move(model), acc);
      },
      py::arg("annotations"), py::arg("l2") = 0.1, py::arg("epochs") = 50, py::arg("learning_rate") = 0.1,
      py::arg("batch_size") = 8, py::arg("seed") = 0, py::arg("lexicon") = py::none(),
      "Train the aspect tagger; returns (model, training token accuracy).");

  py::class_<profile::Pipeline>(m, "Pipeline")
      .def(py::init([](crf::CrfModel model, std::optional<text::OpinionLexicon> lexicon,
                       std::optional<fuzzy::FuzzyConfig> config) {
             profile::Pipeline p;
             p.model = std::move(model);
             if (lexicon) p.lexicon = std::move(*lexicon);
             if (config) p.fuzzy = std::move(*config);
             return p;
           }),
           py::arg("model"), py::arg("lexicon") = py::none(), py::arg("fuzzy") = py::none())
      .def("digest", &profile::Pipeline::digest)
      .def("analyze", [](const profile::Pipeline& p, const std::string& text) {
        return analysis_dict(profile::analyze(text, "input", p));
      });

  m.def(
      "assess",
      [](const std::string& phrase, std::optional<fuzzy::FuzzyConfig> config) {
        py::list out;
        const auto cfg = config.value_or(fuzzy::FuzzyConfig{});
        for (const auto& s : text::tokenize(phrase)) {
          auto tagged = text::tag(s, text::OpinionLexicon::builtin());
          for (const auto& u : text::extract_opinion_units(tagged, text::OpinionLexicon::builtin())) {
            out.append(assessment_dict(fuzzy::assess(u, cfg)));
          }
        }
        return out;
      },
      py::arg("phrase"), py::arg("fuzzy") = py::none(), "Assess every opinion unit in the phrase.");

  m.def(
      "strength",
      [](double adjective, std::optional<double> adverb, std::optional<fuzzy::FuzzyConfig> config) {
        const auto cfg = config.value_or(fuzzy::FuzzyConfig{});
        const double* adv = adverb ? &*adverb : nullptr;
        return fuzzy::defuzzify(fuzzy::infer(adjective, adv, cfg), cfg.integration_step);
      },
      py::arg("adjective"), py::arg("adverb") = py::none(), py::arg("fuzzy") = py::none(),
      "Crisp opinion strength for word degrees in [0, 10].");

  m.def("bm25_term", [](double c, double dl, double avgdl, double n, double nt, double k1, double b) {
    return rank::bm25_term(c, dl, avgdl, n, nt, {k1, b});
  }, py::arg("count"), py::arg("doc_length"), py::arg("avgdl"), py::arg("documents"), py::arg("doc_frequency"),
     py::arg("k1") = 1.2, py::arg("b") = 0.75);

  py::class_<corpus::Index>(m, "Index")
      .def_static("load", &corpus::Index::load_file, py::arg("path"))
      .def_static(
          "build",
          [](const std::string& path, const profile::Pipeline& p, const std::string& doc_mode, bool strict) {
            auto ingested = corpus::ingest_file(path, strict);
            corpus::BuildReport report;
            auto idx = corpus::build_index(ingested.records, p, corpus::parse_document_mode(doc_mode), &report);
            py::dict r;
            r["reviews_indexed"] = report.reviews_indexed;
            r["skipped"] = ingested.skipped.size() + report.skipped.size();
            return py::make_tuple(std::move(idx), r);
          },
          py::arg("corpus"), py::arg("pipeline"), py::arg("doc_mode") = "raw", py::arg("strict") = false,
          "Returns (index, report).")
      .def("save", &corpus::Index::save_file, py::arg("path"))
      .def("serialize", &corpus::Index::serialize)
      .def_readonly("digest", &corpus::Index::config_digest)
      .def_property_readonly("entity_ids",
                             [](const corpus::Index& idx) {
                               std::vector<std::string> ids;
                               for (const auto& e : idx.entities) ids.push_back(e.profile.entity_id);
                               return ids;
                             })
      .def("profile",
           [](const corpus::Index& idx, const std::string& id) -> py::object {
             for (const auto& e : idx.entities) {
               if (e.profile.entity_id != id) continue;
               py::dict d;
               for (const auto& [aspect, s] : e.profile.aspects) {
                 py::dict a;
                 a["orientation"] = str(fuzzy::to_string(s.orientation));
                 a["strength"] = s.mean_strength;
                 a["granularity"] = str(fuzzy::to_string(s.granularity));
                 a["mentions"] = s.mention_count;
                 d[py::str(aspect)] = a;
               }
               return d;
             }
             return py::none();
           })
      .def("__len__", [](const corpus::Index& idx) { return idx.entities.size(); });

  m.def(
      "query",
      [](const corpus::Index& idx, const profile::Pipeline& p, const std::string& text, std::size_t top, double k1,
         double b, const std::string& tier_mode, int tolerance, bool use_tiers) {
        const auto q = rank::parse_query(text, p);
        auto results = rank::rank(idx.entities, idx.stats, q, rank_options(k1, b, tier_mode, tolerance, use_tiers));
        if (results.size() > top) results.resize(top);
        py::list out;
        for (std::size_t i = 0; i < results.size(); ++i) {
          py::dict d;
          d["rank"] = i + 1;
          d["entity"] = results[i].entity_id;
          d["tier"] = str(rank::to_string(results[i].tier));
          d["score"] = results[i].bm25;
          out.append(d);
        }
        return out;
      },
      py::arg("index"), py::arg("pipeline"), py::arg("text"), py::arg("top") = 10, py::arg("k1") = 1.2,
      py::arg("b") = 0.75, py::arg("tier_mode") = "conjunctive", py::arg("tolerance") = 1, py::arg("use_tiers") = true);

  m.def(
      "evaluate",
      [](const corpus::Index& idx, const profile::Pipeline& p, const std::string& queries_path,
         const std::string& qrels_path, std::size_t k, bool baseline) {
        std::ifstream qin(queries_path);
        if (!qin) throw ParseError(queries_path, 0, "cannot open queries file");
        std::ifstream rin(qrels_path);
        if (!rin) throw ParseError(qrels_path, 0, "cannot open qrels file");
        auto queries = eval::read_queries(qin, queries_path);
        auto qrels = eval::read_qrels(rin, qrels_path);
        auto rep = eval::evaluate(idx, p, queries, qrels, {}, k, baseline);
        py::dict d;
        d["k"] = rep.k;
        d["precision"] = rep.mean_system.precision;
        d["ndcg"] = rep.mean_system.ndcg;
        if (rep.mean_baseline) {
          d["baseline_precision"] = rep.mean_baseline->precision;
          d["baseline_ndcg"] = rep.mean_baseline->ndcg;
        }
        return d;
      },
      py::arg("index"), py::arg("pipeline"), py::arg("queries"), py::arg("qrels"), py::arg("k") = 5,
      py::arg("baseline") = true);
}
