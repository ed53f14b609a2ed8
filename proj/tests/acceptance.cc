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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"
#include "guidegraph/classify/features.h"
#include "guidegraph/classify/grid_search.h"
#include "guidegraph/classify/model.h"
#include "guidegraph/cli/cli.h"
#include "guidegraph/enrich/concepts.h"
#include "guidegraph/enrich/thesaurus.h"
#include "guidegraph/enrich/tnm.h"
#include "guidegraph/graph/builder.h"
#include "guidegraph/pdf/document.h"
#include "guidegraph/serialize/jsonld.h"
#include "guidegraph/synth/corpus.h"
#include "guidegraph/synth/phrases.h"
#include "guidegraph/synth/random_graph.h"
#include "guidegraph/synth/score.h"

namespace guidegraph {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const std::string kTestData = GUIDEGRAPH_TEST_DATA;
const std::string kData = GUIDEGRAPH_DEFAULT_DATA;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects failed sub-checks; the criterion passes when there are none.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string failures() const { return Join(failures_, "; "); }

 private:
  std::vector<std::string> failures_;
};

std::string F3(double v) { return FormatFixed3(v); }

// ---- AC1: extraction fidelity over the 50-document corpus

synth::EvalReport ScoreCorpus(double jitter, double *seconds, int *nodes_out) {
  std::vector<synth::CorpusSpec> specs;
  for (uint64_t seed = 0; seed < 50; ++seed)
    specs.push_back(synth::CorpusSpecForSeed(seed, jitter));
  std::vector<synth::GeneratedDocument> docs = synth::GenerateCorpus(specs, 1);
  Clock::time_point start = Clock::now();
  synth::EvalReport total;
  for (const synth::GeneratedDocument &d : docs) {
    graph::GuidelineGraph got = graph::BuildGraph(pdf::ParseDocument(d.pdf));
    total = synth::CombineReports(total, synth::ScoreExtraction(got, d.truth));
  }
  *seconds = Seconds(start);
  *nodes_out = total.totals.nodes;
  return total;
}

void Ac1(Check &c, std::string &detail) {
  double t0 = 0, t1 = 0;
  int n0 = 0, n1 = 0;
  synth::EvalReport clean = ScoreCorpus(0, &t0, &n0);
  synth::EvalReport jit = ScoreCorpus(1, &t1, &n1);
  c.Expect(clean.totals.nodes >= 750 && clean.totals.nodes <= 1250, "node count not ~1000");
  c.Expect(clean.totals.footnotes >= 100, "fewer than 100 footnotes");
  c.Expect(clean.node_formation_errors == 0, "node formation errors at jitter 0");
  c.Expect(clean.connection_errors == 0, "connection errors at jitter 0");
  c.Expect(clean.label_errors == 0, "label errors at jitter 0");
  c.Expect(clean.footnote_errors == 0, "footnote errors at jitter 0");
  c.Expect(jit.node_f1 >= 0.99, "jitter-1 node F1 below 0.99");
  c.Expect(jit.edge_f1 >= 0.99, "jitter-1 edge F1 below 0.99");
  c.Expect(t0 < 60, "corpus extract+eval took over 60 s");
  detail = std::to_string(clean.totals.nodes) + " nodes, " +
           std::to_string(clean.totals.footnotes) + " footnotes, " +
           std::to_string(clean.totals.edges) + " edges; jitter 0 errors " +
           std::to_string(clean.node_formation_errors) + "/" +
           std::to_string(clean.connection_errors) + "/" + std::to_string(clean.label_errors) +
           "/" + std::to_string(clean.footnote_errors) + "; jitter 1 node F1 " +
           F3(jit.node_f1) + " edge F1 " + F3(jit.edge_f1) + "; extract+eval " + F3(t0) + " s";
}

// ---- AC2: stage/TNM fixture

void Ac2(Check &c, std::string &detail) {
  Json cases = ParseJson(ReadFile(kTestData + "/tnm_cases.json"));
  int agree = 0;
  std::set<std::string> texts;
  for (const Json &k : cases) {
    std::string text = k["text"];
    texts.insert(text);
    enrich::TnmResult r = enrich::ExtractMentions(text);
    bool same = r.stages.size() == k["stages"].size() && r.tnm.size() == k["tnm"].size();
    for (size_t i = 0; same && i < r.stages.size(); ++i) {
      const Json &e = k["stages"][i];
      same = r.stages[i].value == e["value"] && r.stages[i].start == e["start"] &&
             r.stages[i].end == e["end"];
    }
    for (size_t i = 0; same && i < r.tnm.size(); ++i) {
      const Json &e = k["tnm"][i];
      same = std::string(1, r.tnm[i].axis) == e["axis"] && r.tnm[i].value == e["value"] &&
             r.tnm[i].start == e["start"] && r.tnm[i].end == e["end"];
    }
    if (same) {
      ++agree;
    } else {
      c.Expect(false, "disagrees on \"" + text + "\"");
    }
  }
  c.Expect(cases.size() == 40, "fixture does not have 40 cases");
  auto contains = [&](const std::string &needle) {
    for (const std::string &t : texts) {
      if (t.find(needle) != std::string::npos) return true;
    }
    return false;
  };
  for (const char *needle : {"TKI", "MRI", "N/A", "M1c", "T4b", "IVB"}) {
    c.Expect(contains(needle), std::string("fixture lacks ") + needle);
  }
  detail = std::to_string(agree) + "/" + std::to_string(cases.size()) +
           " cases agree exactly with the reference regex oracle";
}

// ---- AC3: concept linking

// Set-based padded 3-gram Jaccard, written independently of the library.
double OracleJaccard(const std::string &a, const std::string &b) {
  auto grams = [](const std::string &s) {
    std::string p = "##" + AsciiLower(s) + "##";
    std::set<std::string> g;
    for (size_t i = 0; i + 3 <= p.size(); ++i) g.insert(p.substr(i, 3));
    return g;
  };
  std::set<std::string> ga = grams(a), gb = grams(b);
  size_t inter = 0;
  for (const std::string &g : ga) inter += gb.count(g);
  return static_cast<double>(inter) / (ga.size() + gb.size() - inter);
}

void Ac3(Check &c, std::string &detail) {
  enrich::Lexicon lex = enrich::ParseLexicon(ReadFile(kTestData + "/lexicon20.tsv"));
  enrich::Overrides ovr = enrich::ParseOverrides(ReadFile(kTestData + "/overrides20.tsv"));
  c.Expect(lex.entries.size() == 20, "lexicon fixture does not have 20 entries");
  auto span = [](const std::string &s) { return enrich::EntitySpan{s, 0, s.size()}; };
  auto opts = [](graph::Scheme s) {
    enrich::LinkOptions o;
    o.scheme = s;
    return o;
  };

  int identical = 0;
  for (const enrich::LexiconEntry &e : lex.entries) {
    if (ovr.count(AsciiLower(e.preferred_name))) continue;
    auto m = enrich::LinkEntity(span(e.preferred_name), lex, ovr, opts(e.scheme));
    bool ok = m && m->score == 1.0 && m->code == e.code;
    identical += ok;
    c.Expect(ok, "identical surface \"" + e.preferred_name + "\" not linked with score 1");
  }

  auto chemo = enrich::LinkEntity(span("chemotherapy"), lex, ovr, opts(graph::Scheme::kUmlsLike));
  c.Expect(chemo && chemo->code == "UX9001" && chemo->source == graph::MappingSource::kOverride,
           "override does not win over an exact lexicon match");
  auto lungca = enrich::LinkEntity(span("lung ca"), lex, ovr, opts(graph::Scheme::kNcitLike));
  c.Expect(lungca && lungca->code == "NX0001" && lungca->score == 1.0,
           "override for a sub-threshold mention ignored");

  double j = enrich::TrigramJaccard("lung ca", "lung cancer");
  c.Expect(std::abs(j - 7.0 / 15) <= 1e-9, "lung ca vs lung cancer != 7/15");
  c.Expect(std::abs(j - OracleJaccard("lung ca", "lung cancer")) <= 1e-9,
           "lung ca disagrees with the set oracle");
  c.Expect(!enrich::LinkEntity(span("lung ca"), lex, ovr, opts(graph::Scheme::kUmlsLike)),
           "lung ca (score < 0.7) was linked");
  for (const char *m : {"lung", "brain", "radiation", "effusion", "osimertinibum xyz"}) {
    for (graph::Scheme s : {graph::Scheme::kUmlsLike, graph::Scheme::kNcitLike}) {
      double best = 0;
      for (const enrich::LexiconEntry &e : lex.entries) {
        if (e.scheme != s) continue;
        best = std::max(best, OracleJaccard(m, e.preferred_name));
        for (const std::string &syn : e.synonyms) best = std::max(best, OracleJaccard(m, syn));
      }
      auto got = enrich::LinkEntity(span(m), lex, ovr, opts(s));
      c.Expect(got.has_value() == (best >= 0.7), std::string("threshold rule broken for ") + m);
    }
  }

  enrich::StubThesaurusClient stub(R"({"durvalumab": ["C82688", "C1"], "nothing": []})");
  auto first = enrich::RemoteLookup(span("durvalumab"), stub);
  c.Expect(first && first->code == "C82688" && first->score == 1.0 &&
               first->source == graph::MappingSource::kRemote,
           "remote stub did not select the first concept");
  c.Expect(!enrich::RemoteLookup(span("nothing"), stub), "empty remote answer not none");
  stub.FailAll(true);
  bool threw = false;
  try {
    enrich::RemoteLookup(span("durvalumab"), stub);
  } catch (const enrich::RemoteError &) {
    threw = true;
  }
  c.Expect(threw, "remote failure did not raise RemoteError");
  detail = std::to_string(identical) +
           " identical surfaces at 1.0; Jaccard(lung ca, lung cancer)=" + F3(j) +
           "; overrides, threshold and stub checks";
}

// ---- AC4: classifier stack

void Ac4(Check &c, std::string &detail) {
  using namespace classify;
  LabeledDataset data = synth::GenerateClassDataset(0, 500);
  std::vector<std::string> texts;
  for (const LabeledRow &r : data.rows) texts.push_back(r.text);

  Vocabulary v = FitVocabulary(texts, {});
  std::vector<double> idf = ComputeIdf(v);
  double worst = 0;
  for (const std::string &t : texts) {
    for (Norm n : {Norm::kL1, Norm::kL2}) {
      SparseVector x = TfidfTransform(TransformCounts(v, t), idf, {true, n});
      double s = 0;
      for (const auto &[i, val] : x) s += n == Norm::kL2 ? val * val : std::abs(val);
      if (!x.empty()) worst = std::max(worst, std::abs((n == Norm::kL2 ? std::sqrt(s) : s) - 1));
    }
  }
  c.Expect(worst <= 1e-9, "tf-idf norm off by " + std::to_string(worst));

  VocabularyParams uni;
  uni.ngram_hi = 1;
  Vocabulary hv = FitVocabulary({"aa bb", "aa cc"}, uni);
  SparseVector hx = TfidfTransform(TransformCounts(hv, "aa bb"), ComputeIdf(hv), {});
  c.Expect(hx.size() == 2 && std::abs(hx[0].second - 0.580) <= 1e-3 &&
               std::abs(hx[1].second - 0.815) <= 1e-3,
           "hand-computed tf-idf example mismatch");

  LabeledDataset canary = data;
  canary.rows[17].text += " canaryzz";
  std::vector<int> folds = StratifiedFolds(canary, 10, 4);
  std::mutex mu;
  int leaks = 0, observed = 0;
  GridSearchCv(canary, {PipelineParams{}}, 10, 4, 1,
               [&](size_t, int fold, const LinearModel &m) {
                 std::lock_guard<std::mutex> lock(mu);
                 ++observed;
                 leaks += (m.vocabulary.index.count("canaryzz") > 0) != (fold != folds[17]);
               });
  c.Expect(observed == 10 && leaks == 0, "leakage canary failed");

  std::vector<int> f10 = StratifiedFolds(data, 10, 1);
  for (graph::NodeClass cls : graph::kAllNodeClasses) {
    std::vector<int> count(10, 0);
    for (size_t i = 0; i < data.rows.size(); ++i) {
      if (data.rows[i].label == cls) ++count[f10[i]];
    }
    auto [lo, hi] = std::minmax_element(count.begin(), count.end());
    c.Expect(*hi - *lo <= 1, "fold counts differ by more than 1");
  }

  PipelineParams p;
  p.sgd.seed = 42;
  c.Expect(SaveModel(Train(data, p)) == SaveModel(Train(data, p)),
           "same-seed retraining differs");

  std::vector<PipelineParams> grid = ParseGrid(ReadFile(kData + "/grid_default.json"));
  Clock::time_point start = Clock::now();
  GridResult result = GridSearchCv(data, grid, 10, 0, 1);
  double secs = Seconds(start);
  c.Expect(grid.size() == 32, "default grid does not have 32 combos");
  c.Expect(result.best_mean_accuracy >= 0.95, "best 10-fold accuracy below 0.95");
  c.Expect(secs < 300, "grid search took over 5 min");
  detail = "max norm error " + std::to_string(worst) + "; grid " + std::to_string(grid.size()) +
           "x10 folds best mean accuracy " + F3(result.best_mean_accuracy) + " in " + F3(secs) +
           " s";
}

// ---- AC5: serialization

void Ac5(Check &c, std::string &detail) {
  int identity = 0, stable = 0, rejected = 0, candidates = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    graph::GuidelineGraph g = synth::RandomGraph(seed, 15);
    std::string text = serialize::ToJsonLd(g);
    graph::GuidelineGraph back = serialize::FromJsonLd(text);
    identity += back == g;
    stable += serialize::ToJsonLd(back) == text;
    Json doc = ParseJson(text);
    bool mutated = false;
    for (Json &item : doc["@graph"]) {
      if (item["@type"] == "Node" && !item["previous"].empty()) {
        item["previous"].erase(item["previous"].begin());
        mutated = true;
        break;
      }
    }
    if (!mutated) continue;
    ++candidates;
    try {
      serialize::FromJsonLd(doc.dump());
    } catch (const serialize::AsymmetricEdge &) {
      ++rejected;
    }
  }
  c.Expect(identity == 1000, "round trip not identity");
  c.Expect(stable == 1000, "canonical output not byte-stable");
  c.Expect(candidates > 0 && rejected == candidates, "asymmetric edges accepted");
  detail = std::to_string(identity) + "/1000 identity, " + std::to_string(stable) +
           "/1000 byte-stable, " + std::to_string(rejected) + "/" + std::to_string(candidates) +
           " asymmetric documents rejected";
}

// ---- AC6: command-line pipeline

void Ac6(Check &c, std::string &detail) {
  fs::path dir = fs::temp_directory_path() / "guidegraph_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string &name) { return (dir / name).string(); };
  std::ostringstream out, err;
  int commands = 0;
  auto run = [&](std::vector<std::string> args) {
    ++commands;
    int code = cli::Run(args, out, err);
    c.Expect(code == 0, "exit " + std::to_string(code) + " from " + args[0] + ": " + err.str());
    err.str("");
    return code == 0;
  };
  const int kDocs = 10;
  run({"synth", "--seed", "100", "--count", std::to_string(kDocs), "--out-dir", p("corpus")});
  run({"synth", "--seed", "0", "--class-dataset", p("classes.tsv"), "--count", "500"});
  run({"train", "--dataset", p("classes.tsv"), "--seed", "0", "-o", p("model.json")});
  for (int i = 0; i < kDocs; ++i) {
    std::string s = std::to_string(100 + i);
    run({"extract", p("corpus/doc-" + s + ".pdf"), "-o", p("g" + s + ".jsonld")});
    run({"eval", "--extracted", p("g" + s + ".jsonld"), "--truth",
         p("corpus/doc-" + s + ".truth.jsonld"), "-o", p("r" + s + ".json")});
    Json r = ParseJson(ReadFile(p("r" + s + ".json")));
    for (const char *k :
         {"node_formation_errors", "connection_errors", "label_errors", "footnote_errors"}) {
      c.Expect(r[k] == 0, std::string(k) + " non-zero for doc " + s);
    }
    run({"enrich", p("g" + s + ".jsonld"), "--tnm", "--lexicon", kData + "/lexicon.tsv",
         "--overrides", kData + "/overrides.tsv", "--abbrev", kData + "/abbreviations.tsv", "-o",
         p("e" + s + ".jsonld")});
    run({"classify", p("e" + s + ".jsonld"), "--model", p("model.json"), "-o",
         p("c" + s + ".jsonld")});
    run({"export-csv", p("c" + s + ".jsonld"), "-o", p("csv" + s)});
    c.Expect(fs::exists(p("csv" + s + "/nodes.csv")) && fs::exists(p("csv" + s + "/edges.csv")),
             "missing CSV for doc " + s);
  }
  run({"eval", "--manifest", p("corpus/manifest.json"), "-o", p("report.json")});
  Json total = ParseJson(ReadFile(p("report.json")));
  c.Expect(total["node_formation_errors"] == 0 && total["connection_errors"] == 0 &&
               total["label_errors"] == 0 && total["footnote_errors"] == 0,
           "corpus eval report has errors");
  detail = std::to_string(commands) + " commands over " + std::to_string(kDocs) +
           " documents; corpus report " + std::to_string(total["totals"]["nodes"].get<int>()) +
           " nodes, zero errors=" + (c.ok() ? "yes" : "no");
  fs::remove_all(dir);
}

}  // namespace
}  // namespace guidegraph

int main() {
  using guidegraph::Check;
  struct Criterion {
    const char *id;
    const char *name;
    std::function<void(Check &, std::string &)> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "extraction fidelity", guidegraph::Ac1},
      {"AC2", "stage/TNM extraction", guidegraph::Ac2},
      {"AC3", "concept linking", guidegraph::Ac3},
      {"AC4", "classifier stack", guidegraph::Ac4},
      {"AC5", "serialization", guidegraph::Ac5},
      {"AC6", "end-to-end CLI", guidegraph::Ac6},
  };
  int failed = 0;
  for (const Criterion &cr : criteria) {
    Check check;
    std::string detail;
    try {
      cr.run(check, detail);
    } catch (const std::exception &e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << cr.id << " " << (check.ok() ? "PASS" : "FAIL") << " " << cr.name << ": "
              << detail;
    if (!check.ok()) std::cout << " [" << check.failures() << "]";
    std::cout << std::endl;
    failed += !check.ok();
  }
  return failed == 0 ? 0 : 1;
}
