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

// Phrase pools for synthetic guideline pages and the labelled class dataset.

#ifndef GUIDEGRAPH_SYNTH_PHRASES_H_
#define GUIDEGRAPH_SYNTH_PHRASES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "guidegraph/classify/model.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::synth {

struct PhrasePools {
  // Indexed by NodeClass declaration order.
  std::vector<std::vector<std::string>> by_class;
  std::vector<std::string> labels;     // column headers
  std::vector<std::string> footnotes;  // footnote bodies
  std::vector<std::string> see_targets;

  bool operator==(const PhrasePools &) const = default;
};

const PhrasePools &DefaultPools();

const std::vector<std::string> &ClassPool(const PhrasePools &pools, graph::NodeClass c);

// `n` distinct rows, classes dealt evenly. Texts combine a class phrase with
// class-flavoured qualifiers and occasional shared filler.
classify::LabeledDataset GenerateClassDataset(uint64_t seed, int n,
                                              const PhrasePools &pools = DefaultPools());

}  // namespace guidegraph::synth

#endif  // GUIDEGRAPH_SYNTH_PHRASES_H_
