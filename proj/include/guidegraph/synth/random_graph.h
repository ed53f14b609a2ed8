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

// Random but structurally valid guideline graphs for round-trip and
// property testing of the serializers.

#ifndef GUIDEGRAPH_SYNTH_RANDOM_GRAPH_H_
#define GUIDEGRAPH_SYNTH_RANDOM_GRAPH_H_

#include <cstdint>

#include "guidegraph/graph/graph.h"

namespace guidegraph::synth {

// Canonical graph with 0..max_nodes nodes over a few pages, random edges
// (kinds consistent with pages), footnotes, annotations and warnings.
// Texts include commas, quotes, newlines and non-ASCII characters.
graph::GuidelineGraph RandomGraph(uint64_t seed, int max_nodes = 12);

}  // namespace guidegraph::synth

#endif  // GUIDEGRAPH_SYNTH_RANDOM_GRAPH_H_
