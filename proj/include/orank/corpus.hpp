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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orank/profile.hpp"
#include "orank/rank.hpp"

namespace orank::corpus {

/// One review. On disk: `entity_id<TAB>review_id<TAB>text`, with tabs,
/// newlines and backslashes in the text escaped as \t, \n and \\.
struct CorpusRecord {
  std::string entity_id;
  std::string review_id;
  std::string text;

  bool operator==(const CorpusRecord&) const = default;
};

struct SkippedLine {
  std::size_t line = 0;
  std::string reason;

  bool operator==(const SkippedLine&) const = default;
};

struct IngestResult {
  std::vector<CorpusRecord> records;
  std::vector<SkippedLine> skipped;  // always empty in strict mode
};

/// Blank lines are ignored. In strict mode a malformed line or a duplicate
/// (entity_id, review_id) throws ParseError naming the line; otherwise the
/// line is skipped and reported.
IngestResult ingest(std::istream& in, const std::string& source = "<corpus>", bool strict = true);
IngestResult ingest_file(const std::string& path, bool strict = true);

void write_corpus(std::ostream& out, std::span<const CorpusRecord> records);

/// What BM25 sees as an entity's document.
enum class DocumentMode {
  RawText,         // every review token
  AspectOpinions,  // aspect words and opinion words of paired opinions only
};

std::string_view to_string(DocumentMode mode);
DocumentMode parse_document_mode(std::string_view name);

struct SkippedReview {
  std::string entity_id;
  std::string review_id;
  std::string reason;

  bool operator==(const SkippedReview&) const = default;
};

struct BuildReport {
  std::size_t reviews_indexed = 0;
  std::vector<SkippedReview> skipped;
};

struct Index {
  static constexpr std::string_view kMagic = "ORIDX1";

  std::string config_digest;
  DocumentMode mode = DocumentMode::RawText;
  std::vector<rank::IndexedEntity> entities;  // sorted by entity id
  rank::CorpusStats stats;

  /// Persisted form is text and fully determined by the index contents.
  void save(std::ostream& out) const;
  std::string serialize() const;
  void save_file(const std::string& path) const;
  /// Throws FormatError: Version for a wrong magic line, Corrupt otherwise.
  static Index load(std::istream& in);
  static Index load_file(const std::string& path);

  bool operator==(const Index&) const = default;
};

/// Runs the analysis pipeline over every review, grouped by entity. A review
/// whose analysis throws is skipped and listed in `report`.
Index build_index(std::span<const CorpusRecord> records, const profile::Pipeline& pipeline,
                  DocumentMode mode = DocumentMode::RawText, BuildReport* report = nullptr);

}  // namespace orank::corpus
