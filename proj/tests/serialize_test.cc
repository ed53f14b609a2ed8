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

#include <string>

#include "gtest/gtest.h"
#include "guidegraph/base/error.h"
#include "guidegraph/base/json_util.h"
#include "guidegraph/serialize/csv.h"
#include "guidegraph/serialize/jsonld.h"
#include "guidegraph/synth/random_graph.h"

namespace guidegraph::serialize {
namespace {

using graph::Edge;
using graph::EdgeKind;
using graph::GuidelineGraph;
using graph::NodeBlock;

NodeBlock Node(const std::string &id, const std::string &text, int page = 0) {
  NodeBlock n;
  n.id = id;
  n.page_index = page;
  n.bbox = {10, 20, 110.5, 40.25};
  n.lines = {text};
  return n;
}

TEST(JsonLdTest, SingleNode) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "Observe")};
  Json doc = Json::parse(ToJsonLd(g));
  ASSERT_TRUE(doc.contains("@context"));
  EXPECT_EQ(doc["@context"]["@base"], kDefaultBaseIri);
  ASSERT_EQ(doc["@graph"].size(), 1u);
  const Json &node = doc["@graph"][0];
  EXPECT_EQ(node["@id"], "#p0-n0");
  EXPECT_EQ(node["@type"], "Node");
  EXPECT_TRUE(node["next"].empty());
  EXPECT_TRUE(node["previous"].empty());
  EXPECT_TRUE(node["label"].is_null());
  EXPECT_EQ(node["content"], Json::array({"Observe"}));
}

TEST(JsonLdTest, EdgeDuality) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "A"), Node("p0-n1", "B")};
  g.edges = {{"p0-n0", "p0-n1", EdgeKind::kIntraPage}};
  Json doc = Json::parse(ToJsonLd(g));
  EXPECT_EQ(doc["@graph"][0]["next"], Json::array({"#p0-n1"}));
  EXPECT_EQ(doc["@graph"][1]["previous"], Json::array({"#p0-n0"}));
}

TEST(JsonLdTest, BaseIriOption) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "A")};
  std::string text = ToJsonLd(g, {"https://example.org/nsclc"});
  EXPECT_EQ(Json::parse(text)["@context"]["@base"], "https://example.org/nsclc");
  EXPECT_EQ(FromJsonLd(text), g);
}

TEST(JsonLdTest, RoundTripRandomGraphs) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    GuidelineGraph g = synth::RandomGraph(seed);
    std::string text = ToJsonLd(g);
    EXPECT_EQ(text, ToJsonLd(g));
    GuidelineGraph back = FromJsonLd(text);
    EXPECT_EQ(back, g) << "seed " << seed;
    EXPECT_EQ(ToJsonLd(back), text);
  }
}

TEST(JsonLdTest, EdgeInsertionOrderDoesNotMatter) {
  GuidelineGraph g = synth::RandomGraph(42, 20);
  GuidelineGraph shuffled = g;
  std::reverse(shuffled.edges.begin(), shuffled.edges.end());
  std::reverse(shuffled.nodes.begin(), shuffled.nodes.end());
  EXPECT_EQ(ToJsonLd(g), ToJsonLd(shuffled));
}

TEST(JsonLdTest, FootnoteRefsOnlyForPresentFootnotes) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "A")};
  g.nodes[0].footnote_markers = {'a', 'b'};
  g.footnotes = {{'a', "Based on biopsy", 0}};
  Json doc = Json::parse(ToJsonLd(g));
  EXPECT_EQ(doc["@graph"][0]["footnoteRefs"], Json::array({"#p0-fa"}));
  EXPECT_EQ(doc["@graph"][0]["footnoteMarkers"], Json::array({"a", "b"}));
  EXPECT_EQ(doc["@graph"][1]["@type"], "Footnote");
  EXPECT_EQ(FromJsonLd(doc.dump()), g);
}

std::string TwoNodeDoc(const std::string &a_next, const std::string &b_previous) {
  return R"({"@context": {"@base": "urn:x"}, "@graph": [
    {"@id": "#p0-n0", "@type": "Node", "page": 0, "bbox": [0,0,1,1], "content": ["A"],
     "label": null, "next": )" + a_next + R"(, "previous": [], "footnoteMarkers": [],
     "footnoteRefs": []},
    {"@id": "#p0-n1", "@type": "Node", "page": 0, "bbox": [0,0,1,1], "content": ["B"],
     "label": null, "next": [], "previous": )" + b_previous + R"(, "footnoteMarkers": [],
     "footnoteRefs": []}]})";
}

TEST(JsonLdTest, DanglingReference) {
  try {
    FromJsonLd(TwoNodeDoc(R"(["#p9-n9"])", "[]"));
    FAIL();
  } catch (const DanglingReference &e) {
    EXPECT_EQ(e.id(), "#p9-n9");
  }
}

TEST(JsonLdTest, AsymmetricEdges) {
  EXPECT_THROW(FromJsonLd(TwoNodeDoc(R"(["#p0-n1"])", "[]")), AsymmetricEdge);
  EXPECT_THROW(FromJsonLd(TwoNodeDoc("[]", R"(["#p0-n0"])")), AsymmetricEdge);
  GuidelineGraph ok = FromJsonLd(TwoNodeDoc(R"(["#p0-n1"])", R"(["#p0-n0"])"));
  ASSERT_EQ(ok.edges.size(), 1u);
  EXPECT_EQ(ok.edges[0], (Edge{"p0-n0", "p0-n1", EdgeKind::kIntraPage}));
}

TEST(JsonLdTest, AsymmetryAlwaysRejected) {
  // Dropping any single previous entry from a valid document must fail.
  for (uint64_t seed = 0; seed < 100; ++seed) {
    GuidelineGraph g = synth::RandomGraph(seed, 15);
    if (g.edges.empty()) continue;
    Json doc = Json::parse(ToJsonLd(g));
    for (Json &item : doc["@graph"]) {
      if (item["@type"] == "Node" && !item["previous"].empty()) {
        item["previous"].erase(item["previous"].begin());
        break;
      }
    }
    EXPECT_THROW(FromJsonLd(doc.dump()), AsymmetricEdge) << seed;
  }
}

TEST(JsonLdTest, SchemaViolationPath) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "A")};
  Json doc = Json::parse(ToJsonLd(g));
  doc["@graph"][0].erase("bbox");
  try {
    FromJsonLd(doc.dump());
    FAIL();
  } catch (const SchemaViolation &e) {
    EXPECT_EQ(e.path(), "@graph[0].bbox");
  }
}

TEST(CsvTest, OneEdgeRow) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "A"), Node("p0-n1", "B")};
  g.edges = {{"p0-n0", "p0-n1", EdgeKind::kIntraPage}};
  CsvExport csv = ExportCsv(g);
  EXPECT_EQ(csv.edges, "from,to,kind\r\np0-n0,p0-n1,intra_page\r\n");
  EXPECT_EQ(ParseCsv(csv.nodes).size(), 3u);
}

TEST(CsvTest, CommaIsQuoted) {
  GuidelineGraph g;
  g.nodes = {Node("p0-n0", "Stage IA, IB")};
  g.nodes[0].label = "SAY \"HI\"";
  g.annotations["p0-n0"].node_class = graph::NodeClass::kResult;
  CsvExport csv = ExportCsv(g);
  EXPECT_EQ(csv.nodes,
            "id,page,label,content,node_class\r\n"
            "p0-n0,0,\"SAY \"\"HI\"\"\",\"Stage IA, IB\",Result\r\n");
}

TEST(CsvTest, EmptyGraph) {
  CsvExport csv = ExportCsv(GuidelineGraph{});
  EXPECT_EQ(csv.nodes, "id,page,label,content,node_class\r\n");
  EXPECT_EQ(csv.edges, "from,to,kind\r\n");
}

TEST(CsvTest, RoundTripsThroughParser) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GuidelineGraph g = synth::RandomGraph(seed);
    auto rows = ParseCsv(ExportCsv(g).nodes);
    ASSERT_EQ(rows.size(), g.nodes.size() + 1);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      EXPECT_EQ(rows[i + 1][0], g.nodes[i].id);
      EXPECT_EQ(rows[i + 1][3], graph::JoinedContent(g.nodes[i]));
    }
  }
}

}  // namespace
}  // namespace guidegraph::serialize
