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

#include "guidegraph/cli/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"
#include "guidegraph/pdf/writer.h"
#include "guidegraph/serialize/csv.h"
#include "guidegraph/serialize/jsonld.h"

namespace guidegraph::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = GUIDEGRAPH_DEFAULT_DATA;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("guidegraph_cli_" + std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string &name) const { return (dir_ / name).string(); }

  int Go(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ExtractSynthDocumentRoundTrips) {
  ASSERT_EQ(Go({"synth", "--seed", "4", "--pages", "2", "-o", P("d.pdf"), "--truth",
                P("t.jsonld")}),
            0)
      << err_.str();
  ASSERT_EQ(Go({"extract", P("d.pdf"), "-o", P("g.jsonld")}), 0) << err_.str();
  std::string text = ReadFile(P("g.jsonld"));
  EXPECT_EQ(serialize::ToJsonLd(serialize::FromJsonLd(text)), text);
}

TEST_F(CliTest, ExtractFromGeometryMatchesPdf) {
  ASSERT_EQ(Go({"synth", "--seed", "9", "-o", P("d.pdf")}), 0);
  ASSERT_EQ(Go({"extract", P("d.pdf"), "-o", P("a.jsonld"), "--emit-geometry", P("geo.json")}),
            0);
  ASSERT_EQ(Go({"extract", P("geo.json"), "-o", P("b.jsonld")}), 0) << err_.str();
  EXPECT_EQ(ReadFile(P("a.jsonld")), ReadFile(P("b.jsonld")));
}

TEST_F(CliTest, MissingInputIsInputError) {
  EXPECT_EQ(Go({"extract", P("missing.pdf"), "-o", P("g.jsonld")}), 1);
  EXPECT_NE(err_.str().find("IoError"), std::string::npos);
  EXPECT_FALSE(fs::exists(P("g.jsonld")));
}

TEST_F(CliTest, UnknownFlagPrintsUsage) {
  EXPECT_EQ(Go({"extract", "x.pdf", "--frobnicate"}), 1);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
  EXPECT_EQ(Go({}), 1);
  EXPECT_EQ(Go({"nonsense"}), 1);
  EXPECT_EQ(Go({"--help"}), 0);
  EXPECT_NE(out_.str().find("export-csv"), std::string::npos);
}

TEST_F(CliTest, UnsupportedFeatureIsCodeTwo) {
  pdf::PdfWriterOptions options;
  options.fonts = {{"F1", "Arial"}};
  WriteFile(P("arial.pdf"),
            pdf::WritePdf({pdf::PdfPageSpec{{0, 0, 612, 792}, "BT /F1 10 Tf (x) Tj ET", {}}},
                          options));
  EXPECT_EQ(Go({"extract", P("arial.pdf"), "-o", P("g.jsonld")}), 2);
}

TEST_F(CliTest, MalformedGraphIsInputError) {
  WriteFile(P("bad.jsonld"), "{\"@graph\": 3}");
  EXPECT_EQ(Go({"export-csv", P("bad.jsonld"), "-o", P("csv")}), 1);
  EXPECT_NE(err_.str().find("SchemaViolation"), std::string::npos);
}

TEST_F(CliTest, EvalIdenticalGraphsIsZeroReport) {
  ASSERT_EQ(Go({"synth", "--seed", "2", "-o", P("d.pdf"), "--truth", P("t.jsonld")}), 0);
  ASSERT_EQ(Go({"eval", "--extracted", P("t.jsonld"), "--truth", P("t.jsonld"), "-o",
                P("r.json"), "--format", "json"}),
            0);
  Json r = ParseJson(ReadFile(P("r.json")));
  for (const char *k :
       {"node_formation_errors", "connection_errors", "label_errors", "footnote_errors"}) {
    EXPECT_EQ(r[k], 0) << k;
  }
  EXPECT_EQ(r["node_f1"], 1.0);
  EXPECT_EQ(Go({"eval", "--extracted", P("t.jsonld")}), 1);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  for (int run = 0; run < 2; ++run) {
    std::string s = std::to_string(run);
    ASSERT_EQ(Go({"synth", "--seed", "13", "--jitter", "0.5", "-o", P("d" + s + ".pdf"),
                  "--truth", P("t" + s)}),
              0);
    ASSERT_EQ(Go({"extract", P("d" + s + ".pdf"), "-o", P("g" + s), "--jobs", "2"}), 0);
    ASSERT_EQ(Go({"enrich", P("g" + s), "--tnm", "--lexicon", kData + "/lexicon.tsv", "-o",
                  P("e" + s)}),
              0);
  }
  for (const char *f : {"d%.pdf", "t%", "g%", "e%"}) {
    std::string a = f, b = f;
    a.replace(a.find('%'), 1, "0");
    b.replace(b.find('%'), 1, "1");
    EXPECT_EQ(ReadFile(P(a)), ReadFile(P(b))) << f;
  }
}

TEST_F(CliTest, InputsAreNotModified) {
  ASSERT_EQ(Go({"synth", "--seed", "1", "-o", P("d.pdf")}), 0);
  ASSERT_EQ(Go({"extract", P("d.pdf"), "-o", P("g.jsonld")}), 0);
  std::string before = ReadFile(P("g.jsonld"));
  ASSERT_EQ(Go({"enrich", P("g.jsonld"), "--tnm", "-o", P("e.jsonld")}), 0);
  EXPECT_EQ(ReadFile(P("g.jsonld")), before);
}

TEST_F(CliTest, EnrichWithStubAndStrictRemote) {
  ASSERT_EQ(Go({"synth", "--seed", "6", "-o", P("d.pdf")}), 0);
  ASSERT_EQ(Go({"extract", P("d.pdf"), "-o", P("g.jsonld")}), 0);
  WriteFile(P("stub.json"), "{}");
  ASSERT_EQ(Go({"enrich", P("g.jsonld"), "--lexicon", kData + "/lexicon.tsv", "--overrides",
                kData + "/overrides.tsv", "--abbrev", kData + "/abbreviations.tsv",
                "--stub-fixture", P("stub.json"), "--strict-remote", "--report", P("r.tsv"),
                "-o", P("e.jsonld")}),
            0)
      << err_.str();
  EXPECT_EQ(ReadFile(P("r.tsv")).rfind("scheme\tmapped", 0), 0u);
  // "Durvalumab" is missing from the NCIT_LIKE scheme here, so it goes to
  // the remote thesaurus. A dead endpoint fails strict mode only.
  WriteFile(P("umls_only.tsv"), "UX1\tUMLS_LIKE\tdurvalumab\t\n");
  graph::GuidelineGraph one;
  one.nodes.push_back({"p0-n0", 0, {0, 0, 60, 12}, {"Durvalumab"}, std::nullopt, {}});
  WriteFile(P("one.jsonld"), serialize::ToJsonLd(one));
  std::vector<std::string> dead = {"enrich", P("one.jsonld"), "--lexicon",
                                   P("umls_only.tsv"), "--remote-endpoint",
                                   "http://127.0.0.1:1/search", "--remote-timeout", "1",
                                   "-o", P("x.jsonld")};
  EXPECT_EQ(Go(dead), 0);
  dead.push_back("--strict-remote");
  EXPECT_EQ(Go(dead), 1);
  EXPECT_EQ(Go({"enrich", P("g.jsonld"), "-o", P("y.jsonld")}), 1);
}

TEST_F(CliTest, EndToEndPipeline) {
  ASSERT_EQ(Go({"synth", "--seed", "0", "--count", "3", "--out-dir", P("corpus")}), 0)
      << err_.str();
  ASSERT_EQ(Go({"eval", "--manifest", P("corpus/manifest.json"), "-o", P("report.json")}), 0)
      << err_.str();
  Json r = ParseJson(ReadFile(P("report.json")));
  EXPECT_EQ(r["node_formation_errors"], 0);
  EXPECT_EQ(r["connection_errors"], 0);
  EXPECT_GT(r["totals"]["nodes"].get<int>(), 0);

  ASSERT_EQ(Go({"synth", "--seed", "1", "--class-dataset", P("classes.tsv"), "--count", "200"}),
            0);
  WriteFile(P("grid.json"),
            R"({"SGDClassifier": {"alpha": [1e-5, 1e-4]}, "TfidfTransformer": {"norm": ["l2"]}})");
  ASSERT_EQ(Go({"train", "--dataset", P("classes.tsv"), "--grid", P("grid.json"), "--folds",
                "3", "--seed", "5", "-o", P("model.json"), "--report", P("grid.tsv")}),
            0)
      << err_.str();

  ASSERT_EQ(Go({"extract", P("corpus/doc-0.pdf"), "-o", P("g.jsonld")}), 0);
  ASSERT_EQ(Go({"enrich", P("g.jsonld"), "--tnm", "--lexicon", kData + "/lexicon.tsv", "-o",
                P("e.jsonld")}),
            0);
  ASSERT_EQ(Go({"classify", P("e.jsonld"), "--model", P("model.json"), "-o", P("c.jsonld")}),
            0)
      << err_.str();
  ASSERT_EQ(Go({"export-csv", P("c.jsonld"), "-o", P("csv")}), 0);
  auto rows = serialize::ParseCsv(ReadFile(P("csv/nodes.csv")));
  graph::GuidelineGraph g = serialize::FromJsonLd(ReadFile(P("c.jsonld")));
  ASSERT_EQ(rows.size(), g.nodes.size() + 1);
  for (const auto &n : g.nodes) EXPECT_TRUE(g.annotations.at(n.id).node_class.has_value());
  EXPECT_TRUE(fs::exists(P("csv/edges.csv")));

  // Training straight from a truth sidecar uses its node classes.
  EXPECT_EQ(Go({"train", "--dataset", P("corpus/doc-0.truth.jsonld"), "-o", P("m2.json")}), 0)
      << err_.str();
}

TEST_F(CliTest, ConfigFileAndBadConfig) {
  ASSERT_EQ(Go({"synth", "--seed", "3", "-o", P("d.pdf")}), 0);
  WriteFile(P("cfg.json"), R"({"layout": {"block_max_gap": 0.6}, "graph": {}})");
  EXPECT_EQ(Go({"extract", P("d.pdf"), "--config", P("cfg.json"), "-o", P("g.jsonld")}), 0);
  WriteFile(P("bad.json"), R"({"layout": {"no_such_key": 1}})");
  EXPECT_EQ(Go({"extract", P("d.pdf"), "--config", P("bad.json"), "-o", P("g.jsonld")}), 1);
}

TEST_F(CliTest, SynthSpecFileAndValidation) {
  WriteFile(P("spec.json"), R"({"seed": 7, "pages": 1, "columns_per_page": 2,
                              "nodes_per_column": 2, "edge_density": 1.0})");
  ASSERT_EQ(Go({"synth", "--spec", P("spec.json"), "-o", P("a.pdf"), "--truth", P("a.t")}), 0);
  graph::GuidelineGraph t = serialize::FromJsonLd(ReadFile(P("a.t")));
  EXPECT_EQ(t.nodes.size(), 4u);
  WriteFile(P("bad.json"), R"({"edge_density": 2})");
  EXPECT_EQ(Go({"synth", "--spec", P("bad.json"), "-o", P("b.pdf")}), 1);
  EXPECT_EQ(Go({"synth", "--columns", "9", "-o", P("b.pdf")}), 1);
}

}  // namespace
}  // namespace guidegraph::cli
