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

// Arrow detection, arrow-to-block resolution, cross-page stitching and the
// full geometry-to-graph pipeline.

#ifndef GUIDEGRAPH_GRAPH_BUILDER_H_
#define GUIDEGRAPH_GRAPH_BUILDER_H_

#include <vector>

#include "guidegraph/graph/graph.h"
#include "guidegraph/layout/layout.h"
#include "guidegraph/pdf/geometry.h"

namespace guidegraph::graph {

struct GraphConfig {
  double arrowhead_max_area = 30;  // pt^2
  double chain_tolerance = 1;      // pt between joined segment endpoints
  double head_tolerance = 2;       // pt from shaft end to head centroid
  double block_expand = 5;         // pt added around blocks for resolution
  double link_node_overlap = 0.5;  // of the link rectangle's area

  bool operator==(const GraphConfig &) const = default;
};

struct PipelineConfig {
  layout::LayoutConfig layout;
  GraphConfig graph;
  int jobs = 1;  // pages processed concurrently

  bool operator==(const PipelineConfig &) const = default;
};

// Reads {"layout": {...}, "graph": {...}}; every key is optional.
PipelineConfig ParsePipelineConfig(std::string_view text);

struct Arrow {
  std::vector<Point> shaft;
  Point source_pt;
  Point target_pt;
  int page_index = 0;

  bool operator==(const Arrow &) const = default;
};

std::vector<Arrow> DetectArrows(const pdf::PageGeometry &page, const GraphConfig &config = {},
                                std::vector<Warning> *warnings = nullptr);

std::vector<Edge> LinkBlocks(const std::vector<Arrow> &arrows,
                             const std::vector<NodeBlock> &blocks,
                             const GraphConfig &config = {},
                             std::vector<Warning> *warnings = nullptr);

// `blocks[p]` and `links[p]` belong to page p.
std::vector<Edge> StitchCrossPage(const std::vector<std::vector<NodeBlock>> &blocks,
                                  const std::vector<Edge> &intra_edges,
                                  const std::vector<std::vector<pdf::LinkAnnotation>> &links,
                                  const GraphConfig &config = {},
                                  std::vector<Warning> *warnings = nullptr);

GuidelineGraph BuildGraph(const pdf::DocumentGeometry &doc,
                          const PipelineConfig &config = {});

}  // namespace guidegraph::graph

#endif  // GUIDEGRAPH_GRAPH_BUILDER_H_
