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

#include "guidegraph/serialize/jsonld.h"

#include <map>
#include <set>

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"

namespace guidegraph::serialize {
namespace {

using graph::ConceptMapping;
using graph::Edge;
using graph::EdgeKind;
using graph::Footnote;
using graph::GuidelineGraph;
using graph::NodeAnnotations;
using graph::NodeBlock;
using graph::StageMention;
using graph::TnmMention;
using graph::Warning;

Json Context(const JsonLdOptions &options) {
  Json id_set = {{"@type", "@id"}, {"@container", "@set"}};
  return {{"@base", options.base_iri},
          {"@vocab", kVocabularyIri},
          {"next", id_set},
          {"previous", id_set},
          {"footnoteRefs", id_set},
          {"content", {{"@container", "@list"}}},
          {"bbox", {{"@container", "@list"}}}};
}

Json BoxJson(const BBox &b) { return Json::array({b.x0, b.y0, b.x1, b.y1}); }

Json IdList(const std::vector<std::string> &ids) {
  Json out = Json::array();
  for (const std::string &id : ids) out.push_back("#" + id);
  return out;
}

Json AnnotationsJson(const NodeAnnotations &a, Json node) {
  if (a.stages) {
    Json arr = Json::array();
    for (const StageMention &m : *a.stages) {
      arr.push_back({{"value", m.value}, {"start", m.start}, {"end", m.end}});
    }
    node["stages"] = arr;
  }
  if (a.tnm) {
    Json arr = Json::array();
    for (const TnmMention &m : *a.tnm) {
      arr.push_back({{"axis", std::string(1, m.axis)},
                     {"value", m.value},
                     {"start", m.start},
                     {"end", m.end}});
    }
    node["tnm"] = arr;
  }
  if (a.concepts) {
    Json arr = Json::array();
    for (const ConceptMapping &c : *a.concepts) {
      arr.push_back({{"text", c.text},
                     {"start", c.start},
                     {"end", c.end},
                     {"code", c.code},
                     {"scheme", graph::SchemeName(c.scheme)},
                     {"preferredName", c.preferred_name},
                     {"score", c.score},
                     {"source", graph::MappingSourceName(c.source)}});
    }
    node["concepts"] = arr;
  }
  if (a.node_class) node["nodeClass"] = graph::NodeClassName(*a.node_class);
  return node;
}

}  // namespace

std::string ToJsonLd(const GuidelineGraph &input, const JsonLdOptions &options) {
  GuidelineGraph g = input;
  graph::Canonicalize(g);

  std::map<std::string, std::vector<std::string>> next, previous;
  for (const Edge &e : g.edges) {
    next[e.from_id].push_back(e.to_id);
    previous[e.to_id].push_back(e.from_id);
  }
  std::set<std::string> footnote_ids;
  for (const Footnote &f : g.footnotes)
    footnote_ids.insert(graph::FootnoteId(f.page_index, f.marker));

  Json items = Json::array();
  for (const NodeBlock &n : g.nodes) {
    std::vector<std::string> prev = previous[n.id];
    std::sort(prev.begin(), prev.end(), NaturalOrder());
    Json markers = Json::array();
    std::vector<std::string> refs;
    for (char m : n.footnote_markers) {
      markers.push_back(std::string(1, m));
      std::string fid = graph::FootnoteId(n.page_index, m);
      if (footnote_ids.count(fid)) refs.push_back(fid);
    }
    Json node = {{"@id", "#" + n.id},
                 {"@type", "Node"},
                 {"page", n.page_index},
                 {"bbox", BoxJson(n.bbox)},
                 {"content", n.lines},
                 {"label", n.label ? Json(*n.label) : Json(nullptr)},
                 {"next", IdList(next[n.id])},
                 {"previous", IdList(prev)},
                 {"footnoteMarkers", markers},
                 {"footnoteRefs", IdList(refs)}};
    auto ann = g.annotations.find(n.id);
    if (ann != g.annotations.end()) node = AnnotationsJson(ann->second, std::move(node));
    items.push_back(std::move(node));
  }
  for (const Footnote &f : g.footnotes) {
    items.push_back({{"@id", "#" + graph::FootnoteId(f.page_index, f.marker)},
                     {"@type", "Footnote"},
                     {"marker", std::string(1, f.marker)},
                     {"text", f.text},
                     {"page", f.page_index}});
  }
  for (size_t i = 0; i < g.warnings.size(); ++i) {
    const Warning &w = g.warnings[i];
    items.push_back({{"@id", "#w" + std::to_string(i)},
                     {"@type", "Warning"},
                     {"page", w.page},
                     {"kind", w.kind},
                     {"detail", w.detail}});
  }
  Json doc = {{"@context", Context(options)}, {"@graph", items}};
  return doc.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

namespace {

struct Reader {
  std::string base;

  std::string LocalId(const Json &j, const std::string &path) const {
    std::string s = RequireString(j, path);
    if (!base.empty() && s.rfind(base, 0) == 0) s = s.substr(base.size());
    if (s.size() < 2 || s[0] != '#') {
      throw SchemaViolation(path, "expected a fragment IRI such as \"#p0-n0\"");
    }
    return s.substr(1);
  }

  std::vector<std::string> IdArray(const Json &obj, const std::string &key,
                                   const std::string &path) const {
    std::string p = JoinPath(path, key);
    const Json &arr = RequireArray(RequireKey(obj, key, path), p);
    std::vector<std::string> out;
    for (size_t i = 0; i < arr.size(); ++i) out.push_back(LocalId(arr[i], IndexPath(p, i)));
    return out;
  }
};

size_t Offset(const Json &obj, const char *key, const std::string &path) {
  int64_t v = RequireInt(RequireKey(obj, key, path), JoinPath(path, key));
  if (v < 0) throw SchemaViolation(JoinPath(path, key), "negative offset");
  return static_cast<size_t>(v);
}

char MarkerChar(const Json &j, const std::string &path) {
  std::string s = RequireString(j, path);
  if (s.size() != 1 || s[0] < 'a' || s[0] > 'z') {
    throw SchemaViolation(path, "marker must be one lowercase letter");
  }
  return s[0];
}

void ReadAnnotations(const Json &obj, const std::string &path, NodeAnnotations *a) {
  if (auto it = obj.find("stages"); it != obj.end()) {
    std::string p = JoinPath(path, "stages");
    a->stages.emplace();
    for (size_t i = 0; i < RequireArray(*it, p).size(); ++i) {
      std::string q = IndexPath(p, i);
      const Json &m = (*it)[i];
      RejectUnknownKeys(m, {"value", "start", "end"}, q);
      a->stages->push_back({RequireString(RequireKey(m, "value", q), JoinPath(q, "value")),
                            Offset(m, "start", q), Offset(m, "end", q)});
    }
  }
  if (auto it = obj.find("tnm"); it != obj.end()) {
    std::string p = JoinPath(path, "tnm");
    a->tnm.emplace();
    for (size_t i = 0; i < RequireArray(*it, p).size(); ++i) {
      std::string q = IndexPath(p, i);
      const Json &m = (*it)[i];
      RejectUnknownKeys(m, {"axis", "value", "start", "end"}, q);
      std::string axis = RequireString(RequireKey(m, "axis", q), JoinPath(q, "axis"));
      if (axis != "T" && axis != "N" && axis != "M") {
        throw SchemaViolation(JoinPath(q, "axis"), "expected T, N or M");
      }
      a->tnm->push_back({axis[0], RequireString(RequireKey(m, "value", q), JoinPath(q, "value")),
                         Offset(m, "start", q), Offset(m, "end", q)});
    }
  }
  if (auto it = obj.find("concepts"); it != obj.end()) {
    std::string p = JoinPath(path, "concepts");
    a->concepts.emplace();
    for (size_t i = 0; i < RequireArray(*it, p).size(); ++i) {
      std::string q = IndexPath(p, i);
      const Json &m = (*it)[i];
      RejectUnknownKeys(
          m, {"text", "start", "end", "code", "scheme", "preferredName", "score", "source"}, q);
      ConceptMapping c;
      c.text = RequireString(RequireKey(m, "text", q), JoinPath(q, "text"));
      c.start = Offset(m, "start", q);
      c.end = Offset(m, "end", q);
      c.code = RequireString(RequireKey(m, "code", q), JoinPath(q, "code"));
      auto scheme = graph::ParseScheme(
          RequireString(RequireKey(m, "scheme", q), JoinPath(q, "scheme")));
      if (!scheme) throw SchemaViolation(JoinPath(q, "scheme"), "unknown scheme");
      c.scheme = *scheme;
      c.preferred_name =
          RequireString(RequireKey(m, "preferredName", q), JoinPath(q, "preferredName"));
      c.score = RequireNumber(RequireKey(m, "score", q), JoinPath(q, "score"));
      if (c.score < 0 || c.score > 1) throw SchemaViolation(JoinPath(q, "score"), "not in [0,1]");
      auto source = graph::ParseMappingSource(
          RequireString(RequireKey(m, "source", q), JoinPath(q, "source")));
      if (!source) throw SchemaViolation(JoinPath(q, "source"), "unknown source");
      c.source = *source;
      a->concepts->push_back(std::move(c));
    }
  }
  if (auto it = obj.find("nodeClass"); it != obj.end()) {
    std::string p = JoinPath(path, "nodeClass");
    auto c = graph::ParseNodeClass(RequireString(*it, p));
    if (!c) throw SchemaViolation(p, "unknown node class");
    a->node_class = *c;
  }
}

}  // namespace

GuidelineGraph FromJsonLd(std::string_view text) {
  Json doc = ParseJson(text);
  RejectUnknownKeys(doc, {"@context", "@graph"}, "$");
  Reader reader;
  const Json &context = RequireObject(RequireKey(doc, "@context", "$"), "@context");
  if (auto it = context.find("@base"); it != context.end()) {
    reader.base = RequireString(*it, "@context.@base");
  }
  const Json &items = RequireArray(RequireKey(doc, "@graph", "$"), "@graph");

  GuidelineGraph g;
  std::map<std::string, std::vector<std::string>> next, previous;
  std::vector<std::pair<std::string, std::vector<std::string>>> refs;
  std::set<std::string> ids;
  std::map<size_t, Warning> warnings;

  for (size_t i = 0; i < items.size(); ++i) {
    std::string path = IndexPath("@graph", i);
    const Json &item = RequireObject(items[i], path);
    std::string id = reader.LocalId(RequireKey(item, "@id", path), JoinPath(path, "@id"));
    if (!ids.insert(id).second) throw SchemaViolation(JoinPath(path, "@id"), "duplicate @id");
    std::string type = RequireString(RequireKey(item, "@type", path), JoinPath(path, "@type"));
    if (type == "Node") {
      RejectUnknownKeys(item,
                        {"@id", "@type", "page", "bbox", "content", "label", "next", "previous",
                         "footnoteMarkers", "footnoteRefs", "stages", "tnm", "concepts",
                         "nodeClass"},
                        path);
      NodeBlock n;
      n.id = id;
      n.page_index =
          static_cast<int>(RequireInt(RequireKey(item, "page", path), JoinPath(path, "page")));
      std::string bpath = JoinPath(path, "bbox");
      const Json &bbox = RequireArray(RequireKey(item, "bbox", path), bpath);
      if (bbox.size() != 4) throw SchemaViolation(bpath, "expected 4 numbers");
      n.bbox = {RequireNumber(bbox[0], IndexPath(bpath, 0)),
                RequireNumber(bbox[1], IndexPath(bpath, 1)),
                RequireNumber(bbox[2], IndexPath(bpath, 2)),
                RequireNumber(bbox[3], IndexPath(bpath, 3))};
      std::string cpath = JoinPath(path, "content");
      const Json &content = RequireArray(RequireKey(item, "content", path), cpath);
      for (size_t k = 0; k < content.size(); ++k) {
        n.lines.push_back(RequireString(content[k], IndexPath(cpath, k)));
      }
      if (n.lines.empty()) throw SchemaViolation(cpath, "a node needs at least one line");
      const Json &label = RequireKey(item, "label", path);
      if (!label.is_null()) n.label = RequireString(label, JoinPath(path, "label"));
      std::string mpath = JoinPath(path, "footnoteMarkers");
      const Json &markers = RequireArray(RequireKey(item, "footnoteMarkers", path), mpath);
      for (size_t k = 0; k < markers.size(); ++k) {
        n.footnote_markers.push_back(MarkerChar(markers[k], IndexPath(mpath, k)));
      }
      next[id] = reader.IdArray(item, "next", path);
      previous[id] = reader.IdArray(item, "previous", path);
      refs.emplace_back(id, reader.IdArray(item, "footnoteRefs", path));
      NodeAnnotations a;
      ReadAnnotations(item, path, &a);
      if (!a.empty()) g.annotations[id] = a;
      g.nodes.push_back(std::move(n));
    } else if (type == "Footnote") {
      RejectUnknownKeys(item, {"@id", "@type", "marker", "text", "page"}, path);
      Footnote f;
      f.marker = MarkerChar(RequireKey(item, "marker", path), JoinPath(path, "marker"));
      f.text = RequireString(RequireKey(item, "text", path), JoinPath(path, "text"));
      f.page_index =
          static_cast<int>(RequireInt(RequireKey(item, "page", path), JoinPath(path, "page")));
      if (graph::FootnoteId(f.page_index, f.marker) != id) {
        throw SchemaViolation(JoinPath(path, "@id"), "footnote id must be p{page}-f{marker}");
      }
      g.footnotes.push_back(std::move(f));
    } else if (type == "Warning") {
      RejectUnknownKeys(item, {"@id", "@type", "page", "kind", "detail"}, path);
      if (id.size() < 2 || id[0] != 'w' ||
          id.find_first_not_of("0123456789", 1) != std::string::npos) {
        throw SchemaViolation(JoinPath(path, "@id"), "warning id must be w{index}");
      }
      Warning w;
      w.page = static_cast<int>(RequireInt(RequireKey(item, "page", path), JoinPath(path, "page")));
      w.kind = RequireString(RequireKey(item, "kind", path), JoinPath(path, "kind"));
      w.detail = RequireString(RequireKey(item, "detail", path), JoinPath(path, "detail"));
      warnings[std::stoul(id.substr(1))] = w;
    } else {
      throw SchemaViolation(JoinPath(path, "@type"), "unknown type " + type);
    }
  }

  std::set<std::string> node_ids;
  std::map<std::string, int> page_of;
  for (const NodeBlock &n : g.nodes) {
    node_ids.insert(n.id);
    page_of[n.id] = n.page_index;
  }
  std::set<std::string> footnote_ids;
  for (const Footnote &f : g.footnotes)
    footnote_ids.insert(graph::FootnoteId(f.page_index, f.marker));

  for (const NodeBlock &n : g.nodes) {
    for (const std::string &to : next[n.id]) {
      if (!node_ids.count(to)) throw DanglingReference("#" + to);
      const auto &back = previous[to];
      if (std::find(back.begin(), back.end(), n.id) == back.end()) {
        throw AsymmetricEdge("#" + n.id, "#" + to);
      }
      if (to == n.id) throw SchemaViolation("#" + n.id, "self-loop edge");
      g.edges.push_back({n.id, to,
                         page_of[n.id] == page_of[to] ? EdgeKind::kIntraPage
                                                      : EdgeKind::kCrossPage});
    }
    for (const std::string &from : previous[n.id]) {
      if (!node_ids.count(from)) throw DanglingReference("#" + from);
      const auto &fwd = next[from];
      if (std::find(fwd.begin(), fwd.end(), n.id) == fwd.end()) {
        throw AsymmetricEdge("#" + from, "#" + n.id);
      }
    }
  }
  for (const auto &[id, list] : refs) {
    for (const std::string &r : list) {
      if (!footnote_ids.count(r)) throw DanglingReference("#" + r);
    }
  }
  for (auto &[index, w] : warnings) g.warnings.push_back(w);
  size_t edge_count = g.edges.size();
  graph::Canonicalize(g);
  if (g.edges.size() != edge_count) throw SchemaViolation("@graph", "duplicate edge");
  return g;
}

}  // namespace guidegraph::serialize
