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

#include "guidegraph/synth/score.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "guidegraph/base/geometry.h"
#include "guidegraph/base/util.h"

namespace guidegraph::synth {
namespace {

using graph::Edge;
using graph::GuidelineGraph;
using layout::Footnote;
using layout::NodeBlock;

double Ratio(int num, int den) { return den == 0 ? 1.0 : static_cast<double>(num) / den; }

double F1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

void FillRatios(EvalReport &r) {
  r.node_precision = Ratio(r.matched_nodes, r.extracted_nodes);
  r.node_recall = Ratio(r.matched_nodes, r.totals.nodes);
  r.node_f1 = F1(r.node_precision, r.node_recall);
  r.edge_precision = Ratio(r.matched_edges, r.extracted_edges);
  r.edge_recall = Ratio(r.matched_edges, r.totals.edges);
  r.edge_f1 = F1(r.edge_precision, r.edge_recall);
}

template <typename T>
int SymmetricDifference(const std::set<T> &a, const std::set<T> &b) {
  int n = 0;
  for (const T &x : a) n += b.count(x) == 0;
  for (const T &x : b) n += a.count(x) == 0;
  return n;
}

}  // namespace

EvalReport ScoreExtraction(const GuidelineGraph &extracted, const GuidelineGraph &truth) {
  EvalReport r;
  r.totals.nodes = static_cast<int>(truth.nodes.size());
  r.totals.footnotes = static_cast<int>(truth.footnotes.size());
  r.totals.edges = static_cast<int>(truth.edges.size());
  r.extracted_nodes = static_cast<int>(extracted.nodes.size());
  r.extracted_edges = static_cast<int>(extracted.edges.size());

  // Greedy matching: best IoU first, index order on ties.
  std::vector<std::tuple<double, size_t, size_t>> candidates;
  std::vector<std::string> truth_text, ext_text;
  for (const NodeBlock &n : truth.nodes) truth_text.push_back(graph::JoinedContent(n));
  for (const NodeBlock &n : extracted.nodes) ext_text.push_back(graph::JoinedContent(n));
  for (size_t t = 0; t < truth.nodes.size(); ++t) {
    for (size_t e = 0; e < extracted.nodes.size(); ++e) {
      const NodeBlock &a = truth.nodes[t], &b = extracted.nodes[e];
      if (a.page_index != b.page_index || truth_text[t] != ext_text[e]) continue;
      double iou = IoU(a.bbox, b.bbox);
      if (iou >= kMatchIoU) candidates.emplace_back(-iou, t, e);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::map<std::string, std::string> ext_to_truth;
  std::vector<bool> t_used(truth.nodes.size()), e_used(extracted.nodes.size());
  std::vector<std::pair<size_t, size_t>> matches;
  for (const auto &[neg, t, e] : candidates) {
    if (t_used[t] || e_used[e]) continue;
    t_used[t] = e_used[e] = true;
    matches.emplace_back(t, e);
    ext_to_truth[extracted.nodes[e].id] = truth.nodes[t].id;
  }
  r.matched_nodes = static_cast<int>(matches.size());
  r.node_formation_errors =
      (r.totals.nodes - r.matched_nodes) + (r.extracted_nodes - r.matched_nodes);

  std::set<std::string> matched_truth;
  for (const auto &[t, e] : matches) matched_truth.insert(truth.nodes[t].id);
  std::set<std::pair<std::string, std::string>> truth_edges, mapped_edges, truth_over_matched;
  for (const Edge &e : truth.edges) {
    truth_edges.insert({e.from_id, e.to_id});
    if (matched_truth.count(e.from_id) && matched_truth.count(e.to_id)) {
      truth_over_matched.insert({e.from_id, e.to_id});
    }
  }
  for (const Edge &e : extracted.edges) {
    auto f = ext_to_truth.find(e.from_id), t = ext_to_truth.find(e.to_id);
    if (f != ext_to_truth.end() && t != ext_to_truth.end()) {
      mapped_edges.insert({f->second, t->second});
    }
  }
  for (const auto &e : mapped_edges) r.matched_edges += truth_edges.count(e) > 0;
  r.connection_errors = SymmetricDifference(truth_over_matched, mapped_edges);

  for (const auto &[t, e] : matches) {
    const NodeBlock &a = truth.nodes[t], &b = extracted.nodes[e];
    if (a.label != b.label) ++r.label_errors;
    std::set<char> ma(a.footnote_markers.begin(), a.footnote_markers.end());
    std::set<char> mb(b.footnote_markers.begin(), b.footnote_markers.end());
    r.footnote_errors += SymmetricDifference(ma, mb);
  }
  std::map<std::pair<int, char>, std::string> tf, ef;
  for (const Footnote &f : truth.footnotes) {
    tf.emplace(std::make_pair(f.page_index, f.marker), f.text);
  }
  for (const Footnote &f : extracted.footnotes) {
    ef.emplace(std::make_pair(f.page_index, f.marker), f.text);
  }
  for (const auto &[key, text] : tf) {
    auto it = ef.find(key);
    if (it == ef.end() || it->second != text) ++r.footnote_errors;
  }
  for (const auto &[key, text] : ef) r.footnote_errors += tf.count(key) == 0;

  FillRatios(r);
  return r;
}

EvalReport CombineReports(const EvalReport &a, const EvalReport &b) {
  EvalReport r;
  r.node_formation_errors = a.node_formation_errors + b.node_formation_errors;
  r.connection_errors = a.connection_errors + b.connection_errors;
  r.label_errors = a.label_errors + b.label_errors;
  r.footnote_errors = a.footnote_errors + b.footnote_errors;
  r.matched_nodes = a.matched_nodes + b.matched_nodes;
  r.extracted_nodes = a.extracted_nodes + b.extracted_nodes;
  r.matched_edges = a.matched_edges + b.matched_edges;
  r.extracted_edges = a.extracted_edges + b.extracted_edges;
  r.totals.nodes = a.totals.nodes + b.totals.nodes;
  r.totals.footnotes = a.totals.footnotes + b.totals.footnotes;
  r.totals.edges = a.totals.edges + b.totals.edges;
  FillRatios(r);
  return r;
}

Json ReportToJson(const EvalReport &r) {
  return {{"node_formation_errors", r.node_formation_errors},
          {"connection_errors", r.connection_errors},
          {"label_errors", r.label_errors},
          {"footnote_errors", r.footnote_errors},
          {"matched_nodes", r.matched_nodes},
          {"extracted_nodes", r.extracted_nodes},
          {"matched_edges", r.matched_edges},
          {"extracted_edges", r.extracted_edges},
          {"node_precision", r.node_precision},
          {"node_recall", r.node_recall},
          {"node_f1", r.node_f1},
          {"edge_precision", r.edge_precision},
          {"edge_recall", r.edge_recall},
          {"edge_f1", r.edge_f1},
          {"totals",
           {{"nodes", r.totals.nodes},
            {"footnotes", r.totals.footnotes},
            {"edges", r.totals.edges}}}};
}

std::string FormatReportText(const EvalReport &r) {
  std::string out;
  out += "nodes\t" + std::to_string(r.totals.nodes) + "\n";
  out += "footnotes\t" + std::to_string(r.totals.footnotes) + "\n";
  out += "edges\t" + std::to_string(r.totals.edges) + "\n";
  out += "node_formation_errors\t" + std::to_string(r.node_formation_errors) + "\n";
  out += "connection_errors\t" + std::to_string(r.connection_errors) + "\n";
  out += "label_errors\t" + std::to_string(r.label_errors) + "\n";
  out += "footnote_errors\t" + std::to_string(r.footnote_errors) + "\n";
  out += "node_f1\t" + FormatFixed3(r.node_f1) + "\n";
  out += "edge_f1\t" + FormatFixed3(r.edge_f1) + "\n";
  return out;
}

}  // namespace guidegraph::synth
