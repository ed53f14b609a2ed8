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

#include "guidegraph/synth/random_graph.h"

#include <set>
#include <string>
#include <vector>

#include "guidegraph/base/rng.h"
#include "guidegraph/base/util.h"

namespace guidegraph::synth {
namespace {

const std::vector<std::string> kWords = {"Stage", "IIIA,", "T2a", "N0", "\"quoted\"", "CT",
                              "Durvalumab", "caf\xc3\xa9", "line\nbreak", "lung cancer",
                              "M1c", "a,b", "observe", "\xe2\x89\xa5 5 cm"};

std::string Words(Rng &rng, int lo, int hi) {
  std::vector<std::string> parts;
  for (int i = 0, n = static_cast<int>(rng.UniformInt(lo, hi)); i < n; ++i) {
    parts.push_back(rng.Pick(kWords));
  }
  return Join(parts, " ");
}

}  // namespace

graph::GuidelineGraph RandomGraph(uint64_t seed, int max_nodes) {
  Rng rng(seed);
  graph::GuidelineGraph g;
  const int pages = static_cast<int>(rng.UniformInt(1, 3));
  const int n = static_cast<int>(rng.UniformInt(0, max_nodes));
  std::vector<int> per_page(pages, 0);
  for (int i = 0; i < n; ++i) {
    graph::NodeBlock node;
    node.page_index = static_cast<int>(rng.Below(pages));
    node.id = "p" + std::to_string(node.page_index) + "-n" +
              std::to_string(per_page[node.page_index]++);
    double x = Quantize(rng.Uniform(0, 700)), y = Quantize(rng.Uniform(0, 500));
    node.bbox = {x, y, Quantize(x + rng.Uniform(5, 90)), Quantize(y + rng.Uniform(5, 40))};
    for (int k = 0, lines = static_cast<int>(rng.UniformInt(1, 3)); k < lines; ++k) {
      node.lines.push_back(Words(rng, 1, 4));
    }
    if (rng.Bernoulli(0.5)) node.label = Words(rng, 1, 2);
    for (char m = 'a'; m <= 'd'; ++m) {
      if (rng.Bernoulli(0.2)) node.footnote_markers.push_back(m);
    }
    g.nodes.push_back(node);

    graph::NodeAnnotations a;
    if (rng.Bernoulli(0.5)) {
      a.stages = std::vector<graph::StageMention>{};
      if (rng.Bernoulli(0.5)) a.stages->push_back({"IIIA", 6, 10});
    }
    if (rng.Bernoulli(0.5)) {
      a.tnm = std::vector<graph::TnmMention>{{'T', "2a", 0, 3}, {'N', "0", 4, 6}};
    }
    if (rng.Bernoulli(0.4)) {
      graph::ConceptMapping c;
      c.text = "lung cancer";
      c.start = 2;
      c.end = 13;
      c.code = "C" + std::to_string(rng.Below(100000));
      c.scheme = rng.Bernoulli(0.5) ? graph::Scheme::kUmlsLike : graph::Scheme::kNcitLike;
      c.preferred_name = "Lung \"Carcinoma\"";
      c.score = rng.NextDouble();
      c.source = static_cast<graph::MappingSource>(rng.Below(3));
      a.concepts = std::vector<graph::ConceptMapping>{c};
    }
    if (rng.Bernoulli(0.5)) a.node_class = static_cast<graph::NodeClass>(rng.Below(5));
    if (!a.empty()) g.annotations[node.id] = a;
  }
  std::set<std::pair<size_t, size_t>> used;
  for (int k = 0, edges = static_cast<int>(rng.UniformInt(0, 2 * n)); k < edges && n > 1; ++k) {
    size_t a = rng.Below(n), b = rng.Below(n);
    if (a == b || !used.emplace(a, b).second) continue;
    const graph::NodeBlock &na = g.nodes[a], &nb = g.nodes[b];
    g.edges.push_back({na.id, nb.id,
                       na.page_index == nb.page_index ? graph::EdgeKind::kIntraPage
                                                      : graph::EdgeKind::kCrossPage});
  }
  for (int p = 0; p < pages; ++p) {
    for (char m = 'a'; m <= 'c'; ++m) {
      if (rng.Bernoulli(0.3)) g.footnotes.push_back({m, Words(rng, 1, 5), p});
    }
  }
  for (int k = 0, w = static_cast<int>(rng.UniformInt(0, 3)); k < w; ++k) {
    g.warnings.push_back({static_cast<int>(rng.UniformInt(-1, pages - 1)), "unattached_arrowhead",
                          Words(rng, 1, 3)});
  }
  graph::Canonicalize(g);
  return g;
}

}  // namespace guidegraph::synth
