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

// Scores an extracted graph against ground truth with the error categories
// of a knowledge-extraction evaluation: node formation, connections, labels
// and footnotes.

#ifndef GUIDEGRAPH_SYNTH_SCORE_H_
#define GUIDEGRAPH_SYNTH_SCORE_H_

#include <string>

#include "guidegraph/base/json_util.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::synth {

struct EvalTotals {
  int nodes = 0;      // truth nodes
  int footnotes = 0;  // truth footnotes
  int edges = 0;      // truth edges

  bool operator==(const EvalTotals &) const = default;
};

struct EvalReport {
  int node_formation_errors = 0;
  int connection_errors = 0;
  int label_errors = 0;
  int footnote_errors = 0;
  int matched_nodes = 0;
  int extracted_nodes = 0;
  int matched_edges = 0;
  int extracted_edges = 0;
  double node_precision = 1, node_recall = 1, node_f1 = 1;
  double edge_precision = 1, edge_recall = 1, edge_f1 = 1;
  EvalTotals totals;

  bool operator==(const EvalReport &) const = default;
  bool zero_errors() const {
    return node_formation_errors == 0 && connection_errors == 0 && label_errors == 0 &&
           footnote_errors == 0;
  }
};

inline constexpr double kMatchIoU = 0.8;

// Nodes match one-to-one (greedy by IoU) when they are on the same page,
// their joined text is identical and their boxes have IoU >= 0.8.
EvalReport ScoreExtraction(const graph::GuidelineGraph &extracted,
                           const graph::GuidelineGraph &truth);

// Sums counts and recomputes the ratios from them.
EvalReport CombineReports(const EvalReport &a, const EvalReport &b);

Json ReportToJson(const EvalReport &report);
std::string FormatReportText(const EvalReport &report);

}  // namespace guidegraph::synth

#endif  // GUIDEGRAPH_SYNTH_SCORE_H_
