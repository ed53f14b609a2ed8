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

// The guideline graph: node blocks joined by directed next/previous edges,
// page footnotes, per-node enrichment payloads and structured warnings.

#ifndef GUIDEGRAPH_GRAPH_GRAPH_H_
#define GUIDEGRAPH_GRAPH_GRAPH_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guidegraph/layout/layout.h"

namespace guidegraph::graph {

using layout::Footnote;
using layout::NodeBlock;

enum class EdgeKind { kIntraPage, kCrossPage };

const char *EdgeKindName(EdgeKind kind);  // "intra_page" / "cross_page"
std::optional<EdgeKind> ParseEdgeKind(std::string_view name);

struct Edge {
  std::string from_id;
  std::string to_id;
  EdgeKind kind = EdgeKind::kIntraPage;

  bool operator==(const Edge &) const = default;
};

// Natural order on (from, to), so "p0-n2" sorts before "p0-n10".
bool EdgeLess(const Edge &a, const Edge &b);

struct Warning {
  int page = -1;  // -1 when not tied to a page
  std::string kind;
  std::string detail;

  bool operator==(const Warning &) const = default;
};

// Enrichment payloads. Offsets are byte offsets into the node's joined
// content (lines joined with single spaces).
struct StageMention {
  std::string value;
  size_t start = 0, end = 0;

  bool operator==(const StageMention &) const = default;
};

struct TnmMention {
  char axis = 'T';  // 'T', 'N' or 'M'
  std::string value;
  size_t start = 0, end = 0;

  bool operator==(const TnmMention &) const = default;
};

enum class Scheme { kUmlsLike, kNcitLike };
const char *SchemeName(Scheme scheme);  // "UMLS_LIKE" / "NCIT_LIKE"
std::optional<Scheme> ParseScheme(std::string_view name);

enum class MappingSource { kLexicon, kOverride, kRemote };
const char *MappingSourceName(MappingSource source);
std::optional<MappingSource> ParseMappingSource(std::string_view name);

struct ConceptMapping {
  std::string text;  // mention surface in the expanded text
  size_t start = 0, end = 0;  // span in the original joined content
  std::string code;
  Scheme scheme = Scheme::kUmlsLike;
  std::string preferred_name;
  double score = 0;
  MappingSource source = MappingSource::kLexicon;

  bool operator==(const ConceptMapping &) const = default;
};

enum class NodeClass { kEvaluation, kResult, kDecision, kAction, kUncertain };
inline constexpr NodeClass kAllNodeClasses[] = {
    NodeClass::kEvaluation, NodeClass::kResult, NodeClass::kDecision,
    NodeClass::kAction, NodeClass::kUncertain};
const char *NodeClassName(NodeClass c);
std::optional<NodeClass> ParseNodeClass(std::string_view name);

struct NodeAnnotations {
  std::optional<std::vector<StageMention>> stages;
  std::optional<std::vector<TnmMention>> tnm;
  std::optional<std::vector<ConceptMapping>> concepts;
  std::optional<NodeClass> node_class;

  bool empty() const { return !stages && !tnm && !concepts && !node_class; }
  bool operator==(const NodeAnnotations &) const = default;
};

struct GuidelineGraph {
  std::vector<NodeBlock> nodes;
  std::vector<Edge> edges;
  std::vector<Footnote> footnotes;
  std::map<std::string, NodeAnnotations> annotations;  // by node id
  std::vector<Warning> warnings;

  const NodeBlock *FindNode(const std::string &id) const;

  bool operator==(const GuidelineGraph &) const = default;
};

// Content lines joined with single spaces; the text enrichment works on.
std::string JoinedContent(const NodeBlock &node);

// Footnote id within a document, e.g. "p0-fa".
std::string FootnoteId(int page, char marker);

// Puts nodes in natural id order, edges in EdgeLess order without
// duplicates, footnotes by (page, marker) and drops empty annotations.
void Canonicalize(GuidelineGraph &g);

// Throws Error(kInternal) when an edge names a missing node, is a
// self-loop or is duplicated.
void CheckInvariants(const GuidelineGraph &g);

}  // namespace guidegraph::graph

#endif  // GUIDEGRAPH_GRAPH_GRAPH_H_
