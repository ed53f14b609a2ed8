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

#include <chrono>
#include <string>
#include <thread>
#include <unordered_set>

#include "gtest/gtest.h"
#include "guidegraph/base/util.h"
#include "guidegraph/enrich/concepts.h"
#include "httplib.h"

namespace guidegraph::enrich {
namespace {

using graph::MappingSource;

Lexicon SmallLexicon() {
  return ParseLexicon(
      "C1\tUMLS_LIKE\tlung cancer\tlung carcinoma\n"
      "C2\tUMLS_LIKE\tlung\t\n"
      "C3\tUMLS_LIKE\tdurvalumab\n"
      "N3\tNCIT_LIKE\tdurvalumab\n");
}

TEST(AbbreviationTest, Examples) {
  Expansion e = ExpandAbbreviations("CT at 6-12 mo", DefaultAbbreviations());
  EXPECT_EQ(e.text, "computed tomography at 6-12 mo");
  EXPECT_EQ(e.offsets.ToOriginal(0, 19), (std::pair<size_t, size_t>{0, 2}));
  EXPECT_EQ(e.offsets.ToOriginal(9, 19), (std::pair<size_t, size_t>{0, 2}));
  EXPECT_EQ(e.offsets.ToOriginal(23, 27), (std::pair<size_t, size_t>{6, 10}));
  EXPECT_EQ(ExpandAbbreviations("act now", DefaultAbbreviations()).text, "act now");
  EXPECT_EQ(ExpandAbbreviations("", DefaultAbbreviations()).text, "");
  EXPECT_EQ(ExpandAbbreviations("ct, CTs, RT.", DefaultAbbreviations()).text,
            "ct, CTs, radiation therapy.");
}

TEST(AbbreviationTest, LiteralSpansRoundTrip) {
  std::string text = "Brain MRI and CT; consider RT or SABR";
  Expansion e = ExpandAbbreviations(text, DefaultAbbreviations());
  size_t pos = e.text.find("SABR");
  auto [a, b] = e.offsets.ToOriginal(pos, pos + 4);
  EXPECT_EQ(text.substr(a, b - a), "SABR");
  pos = e.text.find("resonance");
  auto [c, d] = e.offsets.ToOriginal(pos, pos + 9);
  EXPECT_EQ(text.substr(c, d - c), "MRI");
}

TEST(ExtractTest, LongestCaseInsensitiveAtBoundaries) {
  Lexicon lex = SmallLexicon();
  auto spans = ExtractEntities("non-small cell lung cancer", lex);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (EntitySpan{"lung cancer", 15, 26}));
  EXPECT_TRUE(ExtractEntities("nothing here", lex).empty());
  ASSERT_EQ(ExtractEntities("LUNG", lex).size(), 1u);
  EXPECT_TRUE(ExtractEntities("lungs", lex).empty());
  EXPECT_EQ(ExtractEntities("lung, then lung cancer", lex).size(), 2u);
}

TEST(ExtractTest, OverrideSurfacesAreFound) {
  Overrides ov = ParseOverrides("T3\tX9\tUMLS_LIKE\n");
  auto spans = ExtractEntities("T3 disease", Lexicon{}, ov);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "T3");
}

// Brute-force oracle, written without sets: count distinct grams by scanning.
double OracleJaccard(const std::string &a, const std::string &b) {
  auto grams = [](const std::string &s) {
    std::string p = "##" + AsciiLower(s) + "##";
    std::vector<std::string> out;
    for (size_t i = 0; i + 3 <= p.size(); ++i) {
      std::string g = p.substr(i, 3);
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    return out;
  };
  auto ga = grams(a), gb = grams(b);
  int inter = 0;
  for (const auto &g : ga) inter += std::count(gb.begin(), gb.end(), g);
  return static_cast<double>(inter) / (ga.size() + gb.size() - inter);
}

TEST(LinkTest, LungCaAgainstHandCount) {
  // "lung ca": ##l #lu lun ung "ng " "g c" " ca" ca# a## (9 grams).
  // "lung cancer": 13 grams, 7 shared, union 15.  "lung": 6 grams, 4 shared.
  EXPECT_DOUBLE_EQ(TrigramJaccard("lung ca", "lung cancer"), 7.0 / 15);
  EXPECT_DOUBLE_EQ(TrigramJaccard("lung ca", "lung"), 4.0 / 11);
  EXPECT_DOUBLE_EQ(OracleJaccard("lung ca", "lung cancer"), 7.0 / 15);
  EXPECT_FALSE(LinkEntity({"lung ca", 0, 7}, SmallLexicon(), {}).has_value());
  LinkOptions loose;
  loose.threshold = 0.4;
  auto m = LinkEntity({"lung ca", 0, 7}, SmallLexicon(), {}, loose);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->code, "C1");
  // The synonym "lung carcinoma" also shares the trailing "a##": 8 of 17.
  EXPECT_DOUBLE_EQ(m->score, 8.0 / 17);
  EXPECT_DOUBLE_EQ(OracleJaccard("lung ca", "lung carcinoma"), 8.0 / 17);
}

TEST(LinkTest, JaccardMatchesOracle) {
  const std::vector<std::string> words = {"lung", "cancer", "ca", "durvalumab", "RT",
                                          "radiation", "therapy", "a", "", "lunglung"};
  for (const auto &a : words)
    for (const auto &b : words) {
      double got = TrigramJaccard(a, b);
      EXPECT_NEAR(got, OracleJaccard(a, b), 1e-12) << a << "|" << b;
      EXPECT_GE(got, 0.0);
      EXPECT_LE(got, 1.0);
      EXPECT_EQ(got == 1.0, AsciiLower(a) == AsciiLower(b)) << a << "|" << b;
    }
}

TEST(LinkTest, ExactAndOverride) {
  auto m = LinkEntity({"Durvalumab", 0, 10}, SmallLexicon(), {});
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->code, "C3");  // C3 < N3
  EXPECT_EQ(m->score, 1.0);
  EXPECT_EQ(m->source, MappingSource::kLexicon);

  Overrides ov = ParseOverrides("t3\tX\tNCIT_LIKE\nlung\tY\tUMLS_LIKE\n");
  auto t3 = LinkEntity({"T3", 0, 2}, SmallLexicon(), ov);
  ASSERT_TRUE(t3.has_value());
  EXPECT_EQ(t3->code, "X");
  EXPECT_EQ(t3->source, MappingSource::kOverride);
  EXPECT_EQ(t3->score, 1.0);
  // Override precedence holds even against an exact lexicon hit.
  EXPECT_EQ(LinkEntity({"lung", 0, 4}, SmallLexicon(), ov)->code, "Y");
}

TEST(LinkTest, SchemeFilter) {
  LinkOptions ncit;
  ncit.scheme = graph::Scheme::kNcitLike;
  EXPECT_EQ(LinkEntity({"durvalumab", 0, 10}, SmallLexicon(), {}, ncit)->code, "N3");
  EXPECT_FALSE(LinkEntity({"lung", 0, 4}, SmallLexicon(), {}, ncit).has_value());
}

TEST(LoaderTest, RejectsBadRows) {
  EXPECT_THROW(ParseLexicon("C1\tUMLS_LIKE\tx\nC1\tUMLS_LIKE\ty\n"), SchemaViolation);
  EXPECT_NO_THROW(ParseLexicon("C1\tUMLS_LIKE\tx\nC1\tNCIT_LIKE\ty\n"));
  EXPECT_THROW(ParseLexicon("C1\tOTHER\tx\n"), SchemaViolation);
  EXPECT_THROW(ParseLexicon("C1\tUMLS_LIKE\t \n"), SchemaViolation);
  try {
    ParseOverrides("# c\nok\tX\tUMLS_LIKE\nbad row\n");
    FAIL();
  } catch (const SchemaViolation &e) {
    EXPECT_EQ(e.path(), "line 3");
  }
  EXPECT_EQ(ParseAbbreviations("CT\tcomputed tomography\n").at("CT"), "computed tomography");
}

TEST(LoaderTest, BundledDataLoads) {
  Lexicon lex = ParseLexicon(ReadFile(GUIDEGRAPH_DEFAULT_DATA "/lexicon.tsv"));
  EXPECT_GT(lex.entries.size(), 20u);
  ParseOverrides(ReadFile(GUIDEGRAPH_DEFAULT_DATA "/overrides.tsv"));
  EXPECT_EQ(ParseAbbreviations(ReadFile(GUIDEGRAPH_DEFAULT_DATA "/abbreviations.tsv")),
            DefaultAbbreviations());
}

TEST(RemoteTest, StubFirstElementEmptyAndFailure) {
  StubThesaurusClient stub(R"({"durvalumab": ["C82688", "C1"], "nothing": []})");
  auto m = RemoteLookup({"Durvalumab", 0, 10}, stub);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->code, "C82688");
  EXPECT_EQ(m->source, MappingSource::kRemote);
  EXPECT_EQ(m->score, 1.0);
  EXPECT_FALSE(RemoteLookup({"nothing", 0, 7}, stub).has_value());
  stub.FailAll(false);
  try {
    RemoteLookup({"durvalumab", 0, 10}, stub);
    FAIL();
  } catch (const RemoteError &e) {
    EXPECT_FALSE(e.retryable());
  }
}

graph::GuidelineGraph TwoNodeGraph() {
  graph::GuidelineGraph g;
  graph::NodeBlock a;
  a.id = "p0-n0";
  a.lines = {"Brain MRI and lung", "cancer staging"};
  graph::NodeBlock b;
  b.id = "p0-n1";
  b.lines = {"Consider", "imfinzi or T3"};
  g.nodes = {a, b};
  return g;
}

ConceptResources Resources() {
  ConceptResources r;
  r.lexicon = ParseLexicon(
      "U1\tUMLS_LIKE\tlung cancer\n"
      "U2\tUMLS_LIKE\tmagnetic resonance imaging\n"
      "N2\tNCIT_LIKE\tmagnetic resonance imaging\n"
      "U3\tUMLS_LIKE\tdurvalumab\timfinzi\n");
  r.overrides = ParseOverrides("t3\tU9\tUMLS_LIKE\n");
  return r;
}

TEST(AnnotateTest, SpansInOriginalTextAndReport) {
  graph::GuidelineGraph g = TwoNodeGraph();
  ConceptReport report;
  graph::GuidelineGraph out = AnnotateConcepts(g, Resources(), {}, &report);
  const auto &c0 = *out.annotations.at("p0-n0").concepts;
  std::string content = graph::JoinedContent(g.nodes[0]);
  ASSERT_EQ(c0.size(), 3u);  // MRI in both schemes, lung cancer in one
  EXPECT_EQ(content.substr(c0[0].start, c0[0].end - c0[0].start), "MRI");
  EXPECT_EQ(c0[0].text, "magnetic resonance imaging");
  EXPECT_EQ(content.substr(c0[2].start, c0[2].end - c0[2].start), "lung cancer");
  const auto &c1 = *out.annotations.at("p0-n1").concepts;
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0].code, "U3");
  EXPECT_EQ(c1[1].source, MappingSource::kOverride);
  EXPECT_EQ(report.mentions, 4);
  EXPECT_EQ(report.schemes[graph::Scheme::kUmlsLike].mapped, 4);
  EXPECT_EQ(report.schemes[graph::Scheme::kNcitLike].mapped, 1);
  EXPECT_EQ(report.schemes[graph::Scheme::kNcitLike].unmapped, 3);

  std::vector<GoldMapping> gold = ParseGold(
      "p0-n0\t6\t9\tUMLS_LIKE\tU2\n"
      "p0-n1\t9\t16\tUMLS_LIKE\tWRONG\n"
      "p0-n1\t0\t3\tUMLS_LIKE\tU1\n");
  ScoreAgainstGold(out, gold, report);
  EXPECT_EQ(report.schemes[graph::Scheme::kUmlsLike].judged, 2);
  EXPECT_EQ(report.schemes[graph::Scheme::kUmlsLike].incorrect, 1);
  EXPECT_NE(FormatReport(report).find("UMLS_LIKE\t4\t1\t0\t2"), std::string::npos);

  EXPECT_EQ(AnnotateConcepts(out, Resources()), out);
}

TEST(AnnotateTest, NodeWithoutEntitiesUnchanged) {
  graph::GuidelineGraph g;
  graph::NodeBlock a;
  a.id = "p0-n0";
  a.lines = {"Observe"};
  g.nodes = {a};
  EXPECT_EQ(AnnotateConcepts(g, Resources()), g);
}

TEST(AnnotateTest, RemoteForUnresolvedNcitMentions) {
  StubThesaurusClient stub(R"({"imfinzi": [{"code": "C82688", "name": "Durvalumab"}]})");
  ConceptOptions opts;
  opts.client = &stub;
  ConceptReport report;
  auto out = AnnotateConcepts(TwoNodeGraph(), Resources(), opts, &report);
  const auto &c1 = *out.annotations.at("p0-n1").concepts;
  auto remote = std::find_if(c1.begin(), c1.end(), [](const graph::ConceptMapping &c) {
    return c.source == MappingSource::kRemote;
  });
  ASSERT_NE(remote, c1.end());
  EXPECT_EQ(remote->code, "C82688");
  EXPECT_EQ(remote->preferred_name, "Durvalumab");
  EXPECT_EQ(stub.calls(), 3);  // lung cancer, imfinzi, T3
  EXPECT_EQ(report.remote_queries, 3);
}

TEST(AnnotateTest, StrictAndLenientFailure) {
  StubThesaurusClient stub("{}");
  stub.FailAll(true);
  ConceptOptions opts;
  opts.client = &stub;
  opts.retry_backoff_ms = 0;
  opts.strict = true;
  EXPECT_THROW(AnnotateConcepts(TwoNodeGraph(), Resources(), opts), RemoteError);
  opts.strict = false;
  ConceptReport report;
  auto out = AnnotateConcepts(TwoNodeGraph(), Resources(), opts, &report);
  EXPECT_EQ(out.warnings.size(), 3u);
  EXPECT_EQ(out.warnings[0].kind, "remote_lookup_failed");
  EXPECT_EQ(report.remote_failures, 3);
  EXPECT_EQ(stub.calls(), 3 * 3 + 3 * 3);  // two runs, three attempts each
  EXPECT_EQ(AnnotateConcepts(out, Resources(), opts), out);
}

// Counts concurrent requests against a local server.
class CountingClient : public ThesaurusClient {
 public:
  std::vector<RemoteConcept> Search(const std::string &) override {
    int now = ++active_;
    int seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --active_;
    return {};
  }
  std::atomic<int> active_{0}, peak_{0};
};

TEST(AnnotateTest, InFlightCap) {
  graph::GuidelineGraph g;
  ConceptResources r;
  std::string lex;
  for (int i = 0; i < 12; ++i) {
    std::string w = "term" + std::string(1, static_cast<char>('a' + i));
    lex += "U" + std::to_string(i) + "\tUMLS_LIKE\t" + w + "\n";
    graph::NodeBlock n;
    n.id = "p0-n" + std::to_string(i);
    n.lines = {w};
    g.nodes.push_back(n);
  }
  r.lexicon = ParseLexicon(lex);
  CountingClient client;
  ConceptOptions opts;
  opts.client = &client;
  AnnotateConcepts(g, r, opts);
  EXPECT_LE(client.peak_.load(), 4);
  EXPECT_GE(client.peak_.load(), 1);
}

TEST(HttpClientTest, LocalServer) {
  httplib::Server server;
  server.Get("/search", [](const httplib::Request &req, httplib::Response &res) {
    if (req.get_param_value("type") != "contains") {
      res.status = 400;
      return;
    }
    std::string term = req.get_param_value("term");
    if (term == "boom") {
      res.status = 503;
      return;
    }
    if (term == "junk") {
      res.set_content("not json", "application/json");
      return;
    }
    res.set_content(term == "durvalumab"
                        ? R"({"total": 2, "concepts": [{"code": "C82688", "name": "Durvalumab"},
                             {"code": "C2", "name": "Other"}]})"
                        : R"({"total": 0, "concepts": []})",
                    "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpThesaurusClient client("http://127.0.0.1:" + std::to_string(port) + "/search", 5);
  auto m = RemoteLookup({"durvalumab", 0, 10}, client);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->code, "C82688");
  EXPECT_EQ(m->preferred_name, "Durvalumab");
  EXPECT_FALSE(RemoteLookup({"zzz", 0, 3}, client).has_value());
  try {
    client.Search("boom");
    FAIL();
  } catch (const RemoteError &e) {
    EXPECT_TRUE(e.retryable());
  }
  try {
    client.Search("junk");
    FAIL();
  } catch (const RemoteError &e) {
    EXPECT_FALSE(e.retryable());
  }
  server.stop();
  t.join();

  HttpThesaurusClient dead("http://127.0.0.1:" + std::to_string(port) + "/search", 1);
  try {
    dead.Search("x");
    FAIL();
  } catch (const RemoteError &e) {
    EXPECT_TRUE(e.retryable());
  }
}

}  // namespace
}  // namespace guidegraph::enrich
