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

// orank: train the aspect tagger, build an index, query it, evaluate it.
//
// Exit codes: 0 success, 2 usage or input error, 3 internal error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "orank/corpus.hpp"
#include "orank/crf.hpp"
#include "orank/error.hpp"
#include "orank/eval.hpp"
#include "orank/fuzzy.hpp"
#include "orank/profile.hpp"
#include "orank/rank.hpp"
#include "orank/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

/// Input errors the user can fix; mapped to exit code 2.
struct InputError : orank::Error {
  using orank::Error::Error;
};

struct PipelinePaths {
  std::string model = "orank.crf";
  std::string lexicon;
  std::string fuzzy_config;
};

struct RankFlags {
  double k1 = 1.2;
  double b = 0.75;
  std::string tier_mode = "conjunctive";
  int tolerance = 1;

  orank::rank::RankOptions options() const {
    orank::rank::RankOptions o;
    o.bm25 = {k1, b};
    o.mode = tier_mode == "average" ? orank::rank::TierMode::Average : orank::rank::TierMode::Conjunctive;
    o.strength_tolerance = tolerance;
    return o;
  }
};

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) throw InputError(std::string(what) + " not found: " + path);
}

orank::profile::Pipeline load_pipeline(const PipelinePaths& paths) {
  orank::profile::Pipeline pipeline;
  require_file(paths.model, "model file");
  pipeline.model = orank::crf::CrfModel::load_file(paths.model);
  if (!paths.lexicon.empty()) {
    require_file(paths.lexicon, "lexicon file");
    pipeline.lexicon = orank::text::OpinionLexicon::load_file(paths.lexicon);
  }
  if (!paths.fuzzy_config.empty()) {
    require_file(paths.fuzzy_config, "fuzzy config");
    pipeline.fuzzy = orank::fuzzy::FuzzyConfig::load_file(paths.fuzzy_config);
  }
  return pipeline;
}

orank::corpus::Index load_index(const std::string& path) {
  require_file(path, "index file");
  return orank::corpus::Index::load_file(path);
}

void add_pipeline_options(CLI::App* cmd, PipelinePaths& paths) {
  cmd->add_option("-m,--model", paths.model, "CRF model file")->capture_default_str();
  cmd->add_option("--lexicon", paths.lexicon, "Opinion lexicon TSV (default: built-in)");
  cmd->add_option("--fuzzy-config", paths.fuzzy_config, "Fuzzy configuration file (default: built-in)");
}

void add_rank_options(CLI::App* cmd, RankFlags& flags) {
  cmd->add_option("--k1", flags.k1, "BM25 k1")->capture_default_str();
  cmd->add_option("--b", flags.b, "BM25 b")->capture_default_str();
  cmd->add_option("--tier-mode", flags.tier_mode, "conjunctive or average")
      ->check(CLI::IsMember({"conjunctive", "average"}))
      ->capture_default_str();
  cmd->add_option("--tolerance", flags.tolerance, "Granularity levels that still count as a strength match")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string annotations;
  std::string out = "orank.crf";
  std::string lexicon;
  orank::crf::Hyperparams hp;
};

int cmd_train_crf(const TrainArgs& args) {
  require_file(args.annotations, "annotation file");
  const auto corpus = orank::crf::read_conll_file(args.annotations);
  if (corpus.empty()) throw InputError("annotation file has no sentences: " + args.annotations);
  auto lexicon = orank::text::OpinionLexicon::builtin();
  if (!args.lexicon.empty()) {
    require_file(args.lexicon, "lexicon file");
    lexicon = orank::text::OpinionLexicon::load_file(args.lexicon);
  }
  const auto model = orank::crf::train(corpus, args.hp, lexicon);
  model.save_file(args.out);
  std::cout << "sentences: " << corpus.size() << '\n'
            << "features: " << model.features().size() << '\n'
            << "objective: " << fixed(model.objective()) << '\n'
            << "training accuracy: " << fixed(100.0 * orank::crf::token_accuracy(model, corpus, lexicon), 2) << "%\n"
            << "model written to " << args.out << '\n';
  return kExitOk;
}

struct IndexArgs {
  std::string corpus;
  std::string out = "orank.idx";
  std::string doc_mode = "raw";
  bool strict = false;
  PipelinePaths pipeline;
};

int cmd_index(const IndexArgs& args) {
  require_file(args.corpus, "corpus file");
  const auto pipeline = load_pipeline(args.pipeline);
  const auto ingested = orank::corpus::ingest_file(args.corpus, args.strict);
  orank::corpus::BuildReport report;
  const auto index = orank::corpus::build_index(ingested.records, pipeline,
                                                orank::corpus::parse_document_mode(args.doc_mode), &report);
  index.save_file(args.out);

  if (ingested.records.empty()) std::cerr << "warning: corpus is empty; the index answers no queries\n";
  std::cout << "entities: " << index.entities.size() << '\n'
            << "reviews indexed: " << report.reviews_indexed << '\n'
            << "skipped: " << ingested.skipped.size() + report.skipped.size() << '\n';
  for (const auto& s : ingested.skipped) std::cout << "  line " << s.line << ": " << s.reason << '\n';
  for (const auto& s : report.skipped) {
    std::cout << "  review " << s.entity_id << '/' << s.review_id << ": " << s.reason << '\n';
  }
  std::cout << "index written to " << args.out << '\n';
  return kExitOk;
}

struct QueryArgs {
  std::string index = "orank.idx";
  std::string query;
  std::size_t top = 10;
  bool explain = false;
  bool porcelain = false;
  PipelinePaths pipeline;
  RankFlags rank;
};

int cmd_query(const QueryArgs& args) {
  const auto index = load_index(args.index);
  const auto pipeline = load_pipeline(args.pipeline);
  if (pipeline.digest() != index.config_digest) {
    std::cerr << "warning: index was built with a different lexicon, model or fuzzy configuration\n";
  }
  const auto query = orank::rank::parse_query(args.query, pipeline);
  auto results = orank::rank::rank(index.entities, index.stats, query, args.rank.options());
  if (results.size() > args.top) results.resize(args.top);

  if (args.porcelain) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      std::cout << i + 1 << '\t' << results[i].entity_id << '\t' << orank::rank::to_string(results[i].tier) << '\t'
                << fixed(results[i].bm25) << '\n';
    }
    return kExitOk;
  }

  if (args.explain) {
    std::cout << "query:";
    for (const auto& qa : query.aspects) {
      std::cout << ' ' << qa.aspect << '=' << orank::fuzzy::to_string(qa.orientation);
      if (qa.strength_specified) std::cout << '/' << orank::fuzzy::to_string(qa.granularity);
    }
    std::cout << "\nterms:";
    for (const auto& t : query.terms) std::cout << ' ' << t;
    std::cout << "\n\n";
  }
  std::printf("%-5s %-24s %-9s %s\n", "rank", "entity", "tier", "bm25");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::printf("%-5zu %-24s %-9s %s\n", i + 1, r.entity_id.c_str(), std::string(orank::rank::to_string(r.tier)).c_str(),
                fixed(r.bm25).c_str());
    if (!args.explain) continue;
    for (const auto& m : r.matched_aspects) {
      std::cout << "      " << m.aspect << ": level " << m.level;
      if (m.found) {
        std::cout << " (" << orank::fuzzy::to_string(m.found->orientation) << ' '
                  << orank::fuzzy::to_string(m.found->granularity) << ' ' << fixed(m.found->mean_strength, 3) << ", "
                  << m.found->mention_count << (m.found->mention_count == 1 ? " mention)" : " mentions)");
      } else {
        std::cout << " (not mentioned)";
      }
      std::cout << '\n';
    }
  }
  if (results.empty()) std::cout << "no matching entities\n";
  return kExitOk;
}

struct EvalArgs {
  std::string index = "orank.idx";
  std::string queries;
  std::string qrels;
  std::size_t k = 5;
  bool baseline = false;
  PipelinePaths pipeline;
  RankFlags rank;
};

int cmd_eval(const EvalArgs& args) {
  const auto index = load_index(args.index);
  const auto pipeline = load_pipeline(args.pipeline);
  require_file(args.queries, "queries file");
  require_file(args.qrels, "qrels file");
  std::ifstream qin(args.queries);
  std::ifstream rin(args.qrels);
  const auto queries = orank::eval::read_queries(qin, args.queries);
  const auto qrels = orank::eval::read_qrels(rin, args.qrels);
  if (qrels.empty()) throw InputError("qrels file has no judgments: " + args.qrels);

  const auto report = orank::eval::evaluate(index, pipeline, queries, qrels, args.rank.options(), args.k, args.baseline);
  const std::string k = std::to_string(report.k);
  if (args.baseline) {
    std::printf("%-12s %10s %10s %10s %10s\n", "query", ("P@" + k).c_str(), ("NDCG@" + k).c_str(),
                ("base P@" + k).c_str(), ("base NDCG@" + k).c_str());
  } else {
    std::printf("%-12s %10s %10s\n", "query", ("P@" + k).c_str(), ("NDCG@" + k).c_str());
  }
  auto row = [&](const std::string& name, const orank::eval::Metrics& sys,
                 const std::optional<orank::eval::Metrics>& base) {
    if (base) {
      std::printf("%-12s %10.4f %10.4f %10.4f %10.4f\n", name.c_str(), sys.precision, sys.ndcg, base->precision,
                  base->ndcg);
    } else {
      std::printf("%-12s %10.4f %10.4f\n", name.c_str(), sys.precision, sys.ndcg);
    }
  };
  for (const auto& q : report.queries) row(q.query_id, q.system, q.baseline);
  row("mean", report.mean_system, report.mean_baseline);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string text;
  PipelinePaths pipeline;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto pipeline = load_pipeline(args.pipeline);
  const auto analysis = orank::profile::analyze(args.text, "input", pipeline);
  for (const auto& a : analysis.aspects) std::cout << "aspect\t" << a.phrase << "\tsentence " << a.sentence_id << '\n';
  for (const auto& u : analysis.units) {
    std::cout << "opinion\t";
    if (u.unit.negated) std::cout << "not ";
    if (u.unit.modifier) std::cout << u.unit.modifier->token.token.surface << ' ';
    std::cout << u.unit.adjective.token.surface << '\t' << orank::fuzzy::to_string(u.assessment.orientation) << '\t'
              << fixed(u.assessment.strength, 4) << '\t' << orank::fuzzy::to_string(u.assessment.granularity) << '\n';
  }
  for (const auto& o : analysis.opinions) {
    std::cout << "pair\t" << o.aspect << '\t' << orank::fuzzy::to_string(o.orientation) << '\t' << fixed(o.strength, 4)
              << '\t' << orank::fuzzy::to_string(o.granularity) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion-based entity ranking with fuzzy opinion strength"};
  app.set_config("--config", "", "Optional TOML/INI configuration file; flags override it");
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train-crf", "Train the aspect tagger on CoNLL annotations");
  train_cmd->add_option("annotations", train.annotations, "token<TAB>label file")->required();
  train_cmd->add_option("-o,--out", train.out, "Model output path")->capture_default_str();
  train_cmd->add_option("--lexicon", train.lexicon, "Opinion lexicon TSV (default: built-in)");
  train_cmd->add_option("--l2", train.hp.l2, "L2 penalty")->capture_default_str();
  train_cmd->add_option("--epochs", train.hp.epochs, "Training epochs")->capture_default_str();
  train_cmd->add_option("--lr", train.hp.learning_rate, "Learning rate")->capture_default_str();
  train_cmd->add_option("--batch", train.hp.batch_size, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--seed", train.hp.seed, "Shuffle seed")->capture_default_str();

  IndexArgs index;
  auto* index_cmd = app.add_subcommand("index", "Analyze a review corpus and write an index");
  index_cmd->add_option("corpus", index.corpus, "entity<TAB>review<TAB>text file")->required();
  index_cmd->add_option("-o,--out", index.out, "Index output path")->capture_default_str();
  index_cmd->add_option("--doc-mode", index.doc_mode, "BM25 document: raw or aspects")
      ->check(CLI::IsMember({"raw", "aspects"}))
      ->capture_default_str();
  index_cmd->add_flag("--strict", index.strict, "Fail on the first malformed corpus line");
  add_pipeline_options(index_cmd, index.pipeline);

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Rank indexed entities against a query");
  query_cmd->add_option("query", query.query, "Free text or aspect:pos|neg[:granularity] tokens")->required();
  query_cmd->add_option("-i,--index", query.index, "Index file")->capture_default_str();
  query_cmd->add_option("--top", query.top, "Maximum results")->capture_default_str();
  query_cmd->add_flag("--explain", query.explain, "Show per-aspect match detail");
  query_cmd->add_flag("--porcelain", query.porcelain, "rank<TAB>entity<TAB>tier<TAB>score lines");
  add_pipeline_options(query_cmd, query.pipeline);
  add_rank_options(query_cmd, query.rank);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Precision@k and NDCG@k against relevance judgments");
  eval_cmd->add_option("-i,--index", eval.index, "Index file")->capture_default_str();
  eval_cmd->add_option("--queries", eval.queries, "query_id<TAB>query file")->required();
  eval_cmd->add_option("--qrels", eval.qrels, "query_id entity_id grade file")->required();
  eval_cmd->add_option("-k", eval.k, "Cutoff")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_flag("--baseline", eval.baseline, "Also score BM25 alone with tiers disabled");
  add_pipeline_options(eval_cmd, eval.pipeline);
  add_rank_options(eval_cmd, eval.rank);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Show aspects, opinions and pairings found in text");
  analyze_cmd->add_option("text", analyze.text, "Review text")->required();
  add_pipeline_options(analyze_cmd, analyze.pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*train_cmd) return cmd_train_crf(train);
    if (*index_cmd) return cmd_index(index);
    if (*query_cmd) return cmd_query(query);
    if (*eval_cmd) return cmd_eval(eval);
    if (*analyze_cmd) return cmd_analyze(analyze);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const orank::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const orank::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const orank::EmptyQueryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const orank::eval::UnmatchedQueryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const orank::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
