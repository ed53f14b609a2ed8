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

#include "guidegraph/graph/graph.h"

#include <algorithm>
#include <set>

#include "guidegraph/base/error.h"
#include "guidegraph/base/util.h"

namespace guidegraph::graph {

const char *EdgeKindName(EdgeKind kind) {
  return kind == EdgeKind::kIntraPage ? "intra_page" : "cross_page";
}

std::optional<EdgeKind> ParseEdgeKind(std::string_view name) {
  if (name == "intra_page") return EdgeKind::kIntraPage;
  if (name == "cross_page") return EdgeKind::kCrossPage;
  return std::nullopt;
}

bool EdgeLess(const Edge &a, const Edge &b) {
  if (a.from_id != b.from_id) return NaturalLess(a.from_id, b.from_id);
  if (a.to_id != b.to_id) return NaturalLess(a.to_id, b.to_id);
  return a.kind < b.kind;
}

const char *SchemeName(Scheme scheme) {
  return scheme == Scheme::kUmlsLike ? "UMLS_LIKE" : "NCIT_LIKE";
}

std::optional<Scheme> ParseScheme(std::string_view name) {
  if (name == "UMLS_LIKE") return Scheme::kUmlsLike;
  if (name == "NCIT_LIKE") return Scheme::kNcitLike;
  return std::nullopt;
}

const char *MappingSourceName(MappingSource source) {
  switch (source) {
    case MappingSource::kLexicon:
      return "LEXICON";
    case MappingSource::kOverride:
      return "OVERRIDE";
    case MappingSource::kRemote:
      return "REMOTE";
  }
  return "LEXICON";
}

std::optional<MappingSource> ParseMappingSource(std::string_view name) {
  if (name == "LEXICON") return MappingSource::kLexicon;
  if (name == "OVERRIDE") return MappingSource::kOverride;
  if (name == "REMOTE") return MappingSource::kRemote;
  return std::nullopt;
}

const char *NodeClassName(NodeClass c) {
  switch (c) {
    case NodeClass::kEvaluation:
      return "Evaluation";
    case NodeClass::kResult:
      return "Result";
    case NodeClass::kDecision:
      return "Decision";
    case NodeClass::kAction:
      return "Action";
    case NodeClass::kUncertain:
      return "Uncertain";
  }
  return "Uncertain";
}

std::optional<NodeClass> ParseNodeClass(std::string_view name) {
  for (NodeClass c : kAllNodeClasses) {
    if (name == NodeClassName(c)) return c;
  }
  return std::nullopt;
}

const NodeBlock *GuidelineGraph::FindNode(const std::string &id) const {
  for (const NodeBlock &n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::string JoinedContent(const NodeBlock &node) { return Join(node.lines, " "); }

std::string FootnoteId(int page, char marker) {
  return "p" + std::to_string(page) + "-f" + std::string(1, marker);
}

void Canonicalize(GuidelineGraph &g) {
  std::sort(g.nodes.begin(), g.nodes.end(), [](const NodeBlock &a, const NodeBlock &b) {
    return NaturalLess(a.id, b.id);
  });
  std::sort(g.edges.begin(), g.edges.end(), EdgeLess);
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  std::sort(g.footnotes.begin(), g.footnotes.end(), [](const Footnote &a, const Footnote &b) {
    return a.page_index != b.page_index ? a.page_index < b.page_index : a.marker < b.marker;
  });
  for (auto it = g.annotations.begin(); it != g.annotations.end();) {
    it = it->second.empty() ? g.annotations.erase(it) : std::next(it);
  }
}

void CheckInvariants(const GuidelineGraph &g) {
  std::set<std::string> ids;
  for (const NodeBlock &n : g.nodes) {
    if (!ids.insert(n.id).second) {
      throw Error(ErrorCategory::kInternal, "DuplicateNodeId", n.id);
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const Edge &e : g.edges) {
    if (!ids.count(e.from_id) || !ids.count(e.to_id)) {
      throw Error(ErrorCategory::kInternal, "DanglingEdge", e.from_id + " -> " + e.to_id);
    }
    if (e.from_id == e.to_id) throw Error(ErrorCategory::kInternal, "SelfLoop", e.from_id);
    if (!seen.emplace(e.from_id, e.to_id).second) {
      throw Error(ErrorCategory::kInternal, "DuplicateEdge", e.from_id + " -> " + e.to_id);
    }
  }
}

}  // namespace guidegraph::graph
