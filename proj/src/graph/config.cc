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

#include <utility>
#include <vector>

#include "guidegraph/base/error.h"
#include "guidegraph/base/json_util.h"
#include "guidegraph/graph/builder.h"

namespace guidegraph::graph {
namespace {

using Fields = std::vector<std::pair<const char *, double *>>;

void ReadSection(const Json &root, const char *name, const Fields &fields) {
  auto it = root.find(name);
  if (it == root.end()) return;
  RequireObject(*it, name);
  for (const auto &item : it->items()) {
    std::string path = std::string(name) + "." + item.key();
    double *target = nullptr;
    for (const auto &[key, ptr] : fields) {
      if (item.key() == key) target = ptr;
    }
    if (target == nullptr) throw SchemaViolation(path, "unknown setting");
    double v = RequireNumber(item.value(), path);
    if (v < 0) throw SchemaViolation(path, "must not be negative");
    *target = v;
  }
}

}  // namespace

PipelineConfig ParsePipelineConfig(std::string_view text) {
  Json root = ParseJson(text);
  RejectUnknownKeys(root, {"layout", "graph"}, "$");
  PipelineConfig c;
  layout::LayoutConfig &l = c.layout;
  ReadSection(root, "layout",
              {{"line_baseline_tolerance", &l.line_baseline_tolerance},
               {"line_join_gap", &l.line_join_gap},
               {"space_gap", &l.space_gap},
               {"superscript_min_rise", &l.superscript_min_rise},
               {"superscript_max_rise", &l.superscript_max_rise},
               {"superscript_max_size", &l.superscript_max_size},
               {"separator_max_dx", &l.separator_max_dx},
               {"separator_min_length", &l.separator_min_length},
               {"block_max_gap", &l.block_max_gap},
               {"block_min_overlap", &l.block_min_overlap},
               {"label_max_gap", &l.label_max_gap},
               {"label_min_span", &l.label_min_span},
               {"label_min_overlap", &l.label_min_overlap},
               {"footnote_band", &l.footnote_band},
               {"footnote_max_size", &l.footnote_max_size}});
  GraphConfig &g = c.graph;
  ReadSection(root, "graph",
              {{"arrowhead_max_area", &g.arrowhead_max_area},
               {"chain_tolerance", &g.chain_tolerance},
               {"head_tolerance", &g.head_tolerance},
               {"block_expand", &g.block_expand},
               {"link_node_overlap", &g.link_node_overlap}});
  return c;
}

}  // namespace guidegraph::graph
