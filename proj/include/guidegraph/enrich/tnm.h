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

// Cancer stage ("IIIA") and T/N/M score ("T2a", "N0") mentions.

#ifndef GUIDEGRAPH_ENRICH_TNM_H_
#define GUIDEGRAPH_ENRICH_TNM_H_

#include <string_view>
#include <vector>

#include "guidegraph/graph/graph.h"

namespace guidegraph::enrich {

struct TnmResult {
  std::vector<graph::StageMention> stages;
  std::vector<graph::TnmMention> tnm;
};

// Case-sensitive, word-bounded matching. Ranges such as "T1-2" contribute
// only their literal leading token, and prefixed forms ("cT2") never match.
TnmResult ExtractMentions(std::string_view text);

// Sets stages and tnm on every node, computed from its joined content.
graph::GuidelineGraph AnnotateTnm(graph::GuidelineGraph g);

}  // namespace guidegraph::enrich

#endif  // GUIDEGRAPH_ENRICH_TNM_H_
