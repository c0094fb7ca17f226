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

#include "orank/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "orank/error.hpp"
#include "strings.hpp"

namespace orank::corpus {

IngestResult ingest(std::istream& in, const std::string& source, bool strict) {
  IngestResult result;
  std::set<std::pair<std::string, std::string>> seen;
  std::string raw;
  std::size_t line_no = 0;

  auto reject = [&](const std::string& reason) {
    if (strict) throw ParseError(source, line_no, reason);
    result.skipped.push_back(SkippedLine{line_no, reason});
  };

  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::chomp(raw);
    if (detail::trim(line).empty()) continue;
    auto first = line.find('\t');
    auto second = first == std::string_view::npos ? first : line.find('\t', first + 1);
    if (second == std::string_view::npos) {
      reject("expected entity_id<TAB>review_id<TAB>text");
      continue;
    }
    CorpusRecord rec{std::string(line.substr(0, first)), std::string(line.substr(first + 1, second - first - 1)),
                     detail::unescape_field(line.substr(second + 1))};
    if (rec.entity_id.empty() || rec.review_id.empty()) {
      reject("empty entity_id or review_id");
      continue;
    }
    if (!seen.emplace(rec.entity_id, rec.review_id).second) {
      reject("duplicate key (" + rec.entity_id + ", " + rec.review_id + ")");
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

IngestResult ingest_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open corpus file");
  return ingest(in, path, strict);
}

void write_corpus(std::ostream& out, std::span<const CorpusRecord> records) {
  for (const auto& r : records) out << r.entity_id << '\t' << r.review_id << '\t' << detail::escape_field(r.text) << '\n';
}

std::string_view to_string(DocumentMode mode) {
  return mode == DocumentMode::RawText ? "raw" : "aspects";
}

DocumentMode parse_document_mode(std::string_view name) {
  if (name == "raw") return DocumentMode::RawText;
  if (name == "aspects") return DocumentMode::AspectOpinions;
  throw DomainError("unknown document mode '" + std::string(name) + "' (want raw or aspects)");
}

Index build_index(std::span<const CorpusRecord> records, const profile::Pipeline& pipeline, DocumentMode mode,
                  BuildReport* report) {
  std::map<std::string, std::vector<const CorpusRecord*>> by_entity;
  for (const auto& r : records) by_entity[r.entity_id].push_back(&r);

  BuildReport local;
  Index index;
  index.mode = mode;
  index.config_digest = pipeline.digest();

  for (const auto& [entity_id, reviews] : by_entity) {
    std::vector<profile::AspectOpinion> opinions;
    rank::DocumentStats doc;
    std::size_t indexed = 0;
    for (const auto* r : reviews) {
      profile::ReviewAnalysis analysis;
      try {
        analysis = profile::analyze(r->text, r->review_id, pipeline);
      } catch (const std::exception& e) {
        local.skipped.push_back(SkippedReview{entity_id, r->review_id, e.what()});
        continue;
      }
      ++indexed;
      if (mode == DocumentMode::RawText) {
        for (const auto& sentence : analysis.sentences) {
          for (const auto& tok : sentence) doc.add(text::to_lower(tok.token.surface));
        }
      } else {
        for (const auto& op : analysis.opinions) {
          for (auto w : detail::split_ws(op.aspect)) doc.add(std::string(w));
          for (const auto& w : op.opinion_words) doc.add(w);
        }
      }
      opinions.insert(opinions.end(), analysis.opinions.begin(), analysis.opinions.end());
    }
    if (indexed == 0) continue;
    local.reviews_indexed += indexed;
    index.entities.push_back(
        rank::IndexedEntity{profile::summarize(entity_id, opinions, indexed, pipeline.fuzzy.intervals), std::move(doc)});
  }

  std::vector<rank::DocumentStats> docs;
  docs.reserve(index.entities.size());
  for (const auto& e : index.entities) docs.push_back(e.document);
  index.stats = rank::CorpusStats::compute(docs);
  if (report) *report = std::move(local);
  return index;
}

void Index::save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "digest\t" << config_digest << '\n';
  out << "doc_mode\t" << to_string(mode) << '\n';
  out << "entities\t" << entities.size() << '\n';
  for (const auto& e : entities) {
    out << "entity\t" << detail::escape_field(e.profile.entity_id) << '\t' << e.profile.review_count << '\t'
        << e.document.length << '\t' << e.profile.aspects.size() << '\t' << e.document.term_counts.size() << '\n';
    for (const auto& [aspect, s] : e.profile.aspects) {
      out << "aspect\t" << detail::escape_field(aspect) << '\t' << fuzzy::to_string(s.orientation) << '\t'
          << detail::format_double(s.mean_strength) << '\t' << fuzzy::to_string(s.granularity) << '\t'
          << s.mention_count << '\n';
    }
    for (const auto& [term, count] : e.document.term_counts) {
      out << "term\t" << detail::escape_field(term) << '\t' << count << '\n';
    }
  }
  out << "end\n";
}

std::string Index::serialize() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

void Index::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write index file '" + path + "'");
  save(out);
  if (!out) throw Error("failed writing index file '" + path + "'");
}

Index Index::load(std::istream& in) {
  auto corrupt = [](const std::string& what) { return FormatError(FormatError::Kind::Corrupt, "index: " + what); };
  std::string line;
  if (!std::getline(in, line) || detail::chomp(line) != kMagic) {
    throw FormatError(FormatError::Kind::Version, "index: missing or unsupported header (want ORIDX1)");
  }
  auto next = [&](std::string_view key, std::size_t arity) {
    if (!std::getline(in, line)) throw corrupt("truncated before '" + std::string(key) + "'");
    auto fields = detail::split(detail::chomp(line), '\t');
    if (fields.size() != arity + 1 || fields[0] != key) throw corrupt("expected '" + std::string(key) + "' line");
    return std::vector<std::string>(fields.begin() + 1, fields.end());
  };
  auto count = [&](const std::string& s) {
    auto v = detail::parse_int<std::size_t>(s);
    if (!v) throw corrupt("bad count '" + s + "'");
    return *v;
  };

  Index index;
  index.config_digest = next("digest", 1)[0];
  try {
    index.mode = parse_document_mode(next("doc_mode", 1)[0]);
  } catch (const DomainError& e) {
    throw corrupt(e.what());
  }
  const std::size_t n = count(next("entities", 1)[0]);
  for (std::size_t i = 0; i < n; ++i) {
    auto head = next("entity", 5);
    rank::IndexedEntity e;
    e.profile.entity_id = detail::unescape_field(head[0]);
    e.profile.review_count = count(head[1]);
    const std::size_t length = count(head[2]);
    const std::size_t aspects = count(head[3]);
    const std::size_t terms = count(head[4]);
    for (std::size_t a = 0; a < aspects; ++a) {
      auto f = next("aspect", 5);
      profile::AspectSummary s;
      auto mean = detail::parse_double(f[2]);
      if (!mean || !std::isfinite(*mean)) throw corrupt("bad mean strength");
      try {
        s.orientation = fuzzy::parse_orientation(f[1]);
        s.granularity = fuzzy::parse_granularity(f[3]);
      } catch (const DomainError& err) {
        throw corrupt(err.what());
      }
      s.mean_strength = *mean;
      s.mention_count = count(f[4]);
      e.profile.aspects.emplace(detail::unescape_field(f[0]), s);
    }
    for (std::size_t t = 0; t < terms; ++t) {
      auto f = next("term", 2);
      auto c = detail::parse_int<std::uint32_t>(f[1]);
      if (!c) throw corrupt("bad term count");
      e.document.term_counts.emplace(detail::unescape_field(f[0]), *c);
      e.document.length += *c;
    }
    if (e.document.length != length) throw corrupt("document length mismatch for " + e.profile.entity_id);
    index.entities.push_back(std::move(e));
  }
  if (!std::getline(in, line) || detail::chomp(line) != "end") throw corrupt("missing end marker");

  std::vector<rank::DocumentStats> docs;
  for (const auto& e : index.entities) docs.push_back(e.document);
  index.stats = rank::CorpusStats::compute(docs);
  return index;
}

Index Index::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open index file '" + path + "'");
  return load(in);
}

}  // namespace orank::corpus
