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

#include <set>
#include <string>

#include "gtest/gtest.h"
#include "guidegraph/base/json_util.h"
#include "guidegraph/base/rng.h"
#include "guidegraph/base/util.h"
#include "guidegraph/enrich/tnm.h"
#include "guidegraph/synth/random_graph.h"

namespace guidegraph::enrich {
namespace {

TEST(TnmTest, MixedStageAndTnmText) {
  TnmResult r = ExtractMentions("Stage IIIA, T2a N0 M0");
  ASSERT_EQ(r.stages.size(), 1u);
  EXPECT_EQ(r.stages[0].value, "IIIA");
  ASSERT_EQ(r.tnm.size(), 3u);
  EXPECT_EQ(r.tnm[0], (graph::TnmMention{'T', "2a", 12, 15}));
  EXPECT_EQ(r.tnm[1], (graph::TnmMention{'N', "0", 16, 18}));
  EXPECT_EQ(r.tnm[2], (graph::TnmMention{'M', "0", 19, 21}));
}

TEST(TnmTest, EmptyAndNoise) {
  EXPECT_TRUE(ExtractMentions("").stages.empty());
  TnmResult r = ExtractMentions("TKI therapy, MRI brain");
  EXPECT_TRUE(r.stages.empty());
  EXPECT_TRUE(r.tnm.empty());
}

TEST(TnmTest, RangeYieldsLeadingToken) {
  TnmResult r = ExtractMentions("T1-2, N0");
  ASSERT_EQ(r.tnm.size(), 2u);
  EXPECT_EQ(r.tnm[0].axis, 'T');
  EXPECT_EQ(r.tnm[0].value, "1");
  EXPECT_EQ(r.tnm[1].axis, 'N');
}

// Fixture expectations were produced by a different regex engine.
TEST(TnmTest, FixtureCases) {
  Json cases = Json::parse(ReadFile(GUIDEGRAPH_TEST_DATA "/tnm_cases.json"));
  ASSERT_EQ(cases.size(), 40u);
  for (const Json &c : cases) {
    std::string text = c["text"];
    TnmResult r = ExtractMentions(text);
    ASSERT_EQ(r.stages.size(), c["stages"].size()) << text;
    for (size_t i = 0; i < r.stages.size(); ++i) {
      EXPECT_EQ(r.stages[i].value, c["stages"][i]["value"]) << text;
      EXPECT_EQ(r.stages[i].start, c["stages"][i]["start"]) << text;
    }
    ASSERT_EQ(r.tnm.size(), c["tnm"].size()) << text;
    for (size_t i = 0; i < r.tnm.size(); ++i) {
      EXPECT_EQ(std::string(1, r.tnm[i].axis), c["tnm"][i]["axis"]) << text;
      EXPECT_EQ(r.tnm[i].value, c["tnm"][i]["value"]) << text;
      EXPECT_EQ(r.tnm[i].end, c["tnm"][i]["end"]) << text;
    }
  }
}

// Token oracle: every pattern consists of word characters only, so with
// word boundaries a match is exactly a maximal word token from the set.
std::vector<std::pair<std::string, size_t>> Tokens(const std::string &s) {
  std::vector<std::pair<std::string, size_t>> out;
  for (size_t i = 0; i < s.size();) {
    if (!IsWordChar(s[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.size() && IsWordChar(s[j])) ++j;
    out.push_back({s.substr(i, j - i), i});
    i = j;
  }
  return out;
}

TEST(TnmTest, MatchesTokenOracleOnRandomText) {
  const std::vector<std::string> pieces = {
      "I", "II", "III", "IV", "IIIA", "IVB", "T2a", "T5", "N3", "N4", "M1c",
      "M2", "x", "-", ",", " ", "_", "9", "Tx", "cT1", "A", "1"};
  std::set<std::string> stage_set, t_set, n_set, m_set;
  for (std::string r : {"I", "II", "III", "IV"})
    for (std::string s : {"", "A", "B", "C"}) stage_set.insert(r + s);
  for (char d = '0'; d <= '4'; ++d)
    for (std::string s : {"", "a", "b", "c"}) t_set.insert("T" + std::string(1, d) + s);
  for (char d = '0'; d <= '3'; ++d) n_set.insert("N" + std::string(1, d));
  for (char d = '0'; d <= '1'; ++d)
    for (std::string s : {"", "a", "b", "c"}) m_set.insert("M" + std::string(1, d) + s);
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    int n = 1 + rng.Below(10);
    for (int i = 0; i < n; ++i) text += rng.Pick(pieces);
    size_t want_stage = 0, want_tnm = 0;
    for (const auto &[tok, pos] : Tokens(text)) {
      want_stage += stage_set.count(tok);
      want_tnm += t_set.count(tok) + n_set.count(tok) + m_set.count(tok);
    }
    TnmResult r = ExtractMentions(text);
    EXPECT_EQ(r.stages.size(), want_stage) << text;
    EXPECT_EQ(r.tnm.size(), want_tnm) << text;
    for (const auto &m : r.stages) EXPECT_EQ(text.substr(m.start, m.end - m.start), m.value);
    for (const auto &m : r.tnm)
      EXPECT_EQ(text.substr(m.start, m.end - m.start), m.axis + m.value);
    for (size_t i = 1; i < r.tnm.size(); ++i) EXPECT_LT(r.tnm[i - 1].start, r.tnm[i].start);
  }
}

TEST(TnmTest, AnnotateIsIdempotentAndKeepsGraph) {
  graph::GuidelineGraph g = synth::RandomGraph(3, 10);
  g.nodes[0].lines = {"T1-2,", "N0"};
  graph::GuidelineGraph once = AnnotateTnm(g);
  EXPECT_EQ(AnnotateTnm(once), once);
  EXPECT_EQ(once.nodes, g.nodes);
  EXPECT_EQ(once.edges, g.edges);
  const auto &a = once.annotations.at(g.nodes[0].id);
  ASSERT_EQ(a.tnm->size(), 2u);
  EXPECT_EQ((*a.tnm)[1].start, 6u);
  for (const auto &node : g.nodes) {
    EXPECT_TRUE(once.annotations.at(node.id).stages.has_value());
  }
}

}  // namespace
}  // namespace guidegraph::enrich
