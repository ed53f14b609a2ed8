// Copyright 2026 The Guidegraph Authors.
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

// Concept mapping: abbreviation expansion, lexicon entity extraction,
// character 3-gram linking, an override dictionary and an optional remote
// thesaurus search for mentions the local lexicon cannot resolve.

#ifndef GUIDEGRAPH_ENRICH_CONCEPTS_H_
#define GUIDEGRAPH_ENRICH_CONCEPTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/base/error.h"
#include "guidegraph/enrich/thesaurus.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::enrich {

using graph::ConceptMapping;
using graph::Scheme;

struct LexiconEntry {
  std::string code;
  Scheme scheme = Scheme::kUmlsLike;
  std::string preferred_name;
  std::vector<std::string> synonyms;
};

struct Lexicon {
  std::vector<LexiconEntry> entries;

  const LexiconEntry *Find(Scheme scheme, std::string_view code) const;
};

struct Override {
  std::string code;
  Scheme scheme = Scheme::kUmlsLike;
};

// Keyed by lowercased surface. One surface may override several schemes.
using Overrides = std::multimap<std::string, Override>;

// Whole-token, case-sensitive short form -> expansion.
using AbbreviationTable = std::map<std::string, std::string>;

// TSV loaders. Malformed rows raise SchemaViolation with a "line N" path;
// duplicate codes within a scheme and empty names are rejected.
Lexicon ParseLexicon(std::string_view tsv);
Overrides ParseOverrides(std::string_view tsv);
AbbreviationTable ParseAbbreviations(std::string_view tsv);
AbbreviationTable DefaultAbbreviations();

// Maps spans of expanded text back to the original. A span touching an
// expansion maps to the whole abbreviation it came from.
class OffsetMap {
 public:
  struct Segment {
    size_t expanded_start, expanded_end;
    size_t original_start, original_end;
    bool replaced;
  };

  explicit OffsetMap(std::vector<Segment> segments = {})
      : segments_(std::move(segments)) {}

  std::pair<size_t, size_t> ToOriginal(size_t start, size_t end) const;
  const std::vector<Segment> &segments() const { return segments_; }

 private:
  std::vector<Segment> segments_;
};

struct Expansion {
  std::string text;
  OffsetMap offsets;
};

Expansion ExpandAbbreviations(std::string_view text, const AbbreviationTable &table);

struct EntitySpan {
  std::string text;
  size_t start = 0, end = 0;

  bool operator==(const EntitySpan &) const = default;
};

// Case-insensitive longest match of every surface form at word boundaries.
// Override surfaces count as surface forms too, since an override is useless
// unless its surface can be found.
std::vector<EntitySpan> ExtractEntities(std::string_view expanded,
                                        const Lexicon &lexicon,
                                        const Overrides &overrides = {});

// Jaccard similarity of character 3-gram sets, lowercased and padded with
// two boundary sentinels on each side.
double TrigramJaccard(std::string_view a, std::string_view b);

struct LinkOptions {
  double threshold = 0.7;
  // When set, only lexicon entries and overrides of this scheme compete.
  std::optional<Scheme> scheme;
};

// Overrides win with score 1. Otherwise the best scoring surface form, ties
// to the smallest code. Spans in the result are those of `mention`.
std::optional<ConceptMapping> LinkEntity(const EntitySpan &mention,
                                         const Lexicon &lexicon,
                                         const Overrides &overrides,
                                         const LinkOptions &options = {});

// First concept of a "contains" search, score 1 by convention.
std::optional<ConceptMapping> RemoteLookup(const EntitySpan &mention,
                                           ThesaurusClient &client);

struct ConceptResources {
  Lexicon lexicon;
  Overrides overrides;
  AbbreviationTable abbreviations = DefaultAbbreviations();
};

struct ConceptOptions {
  double threshold = 0.7;
  std::vector<Scheme> schemes = {Scheme::kUmlsLike, Scheme::kNcitLike};
  // Remote search for mentions no local entry resolves. Only used for the
  // client's scheme.
  ThesaurusClient *client = nullptr;
  bool strict = false;  // propagate RemoteError instead of warning
  int max_in_flight = 4;
  int max_retries = 2;
  int retry_backoff_ms = 200;
};

// Gold mapping: node id, span in the original joined content, scheme, code.
struct GoldMapping {
  std::string node_id;
  size_t start = 0, end = 0;
  Scheme scheme = Scheme::kUmlsLike;
  std::string code;
};

std::vector<GoldMapping> ParseGold(std::string_view tsv);

struct SchemeCounts {
  int mapped = 0;
  int unmapped = 0;
  int incorrect = 0;  // mapped, gold present for the span, codes differ
  int judged = 0;     // mapped mentions that had a gold entry
};

struct ConceptReport {
  std::map<Scheme, SchemeCounts> schemes;
  int mentions = 0;
  int remote_queries = 0;
  int remote_failures = 0;
};

// Adds incorrect/judged counts to `report` by comparing the annotated graph
// against gold mappings.
void ScoreAgainstGold(const graph::GuidelineGraph &g,
                      const std::vector<GoldMapping> &gold, ConceptReport &report);

std::string FormatReport(const ConceptReport &report);

graph::GuidelineGraph AnnotateConcepts(graph::GuidelineGraph g,
                                       const ConceptResources &resources,
                                       const ConceptOptions &options = {},
                                       ConceptReport *report = nullptr);

}  // namespace guidegraph::enrich

#endif  // GUIDEGRAPH_ENRICH_CONCEPTS_H_
