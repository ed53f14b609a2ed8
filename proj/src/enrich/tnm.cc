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

#include "guidegraph/enrich/tnm.h"

#include <algorithm>
#include <regex>
#include <string>

namespace guidegraph::enrich {
namespace {

const std::regex &StagePattern() {
  static const std::regex re(R"(\b(IV|III|II|I)[ABC]?\b)");
  return re;
}

struct AxisPattern {
  char axis;
  std::regex re;
};

const std::vector<AxisPattern> &AxisPatterns() {
  static const std::vector<AxisPattern> patterns = {
      {'T', std::regex(R"(\bT[0-4][abc]?\b)")},
      {'N', std::regex(R"(\bN[0-3]\b)")},
      {'M', std::regex(R"(\bM[01][abc]?\b)")},
  };
  return patterns;
}

}  // namespace

TnmResult ExtractMentions(std::string_view text) {
  TnmResult result;
  using It = std::string_view::const_iterator;
  using Match = std::regex_iterator<It>;
  for (Match m(text.begin(), text.end(), StagePattern()), end; m != end; ++m) {
    size_t start = m->position();
    result.stages.push_back({m->str(), start, start + m->length()});
  }
  for (const AxisPattern &p : AxisPatterns()) {
    for (Match m(text.begin(), text.end(), p.re), end; m != end; ++m) {
      size_t start = m->position();
      result.tnm.push_back(
          {p.axis, m->str().substr(1), start, start + m->length()});
    }
  }
  std::sort(result.tnm.begin(), result.tnm.end(),
            [](const graph::TnmMention &a, const graph::TnmMention &b) {
              return a.start < b.start;
            });
  return result;
}

graph::GuidelineGraph AnnotateTnm(graph::GuidelineGraph g) {
  for (const graph::NodeBlock &node : g.nodes) {
    TnmResult r = ExtractMentions(graph::JoinedContent(node));
    graph::NodeAnnotations &a = g.annotations[node.id];
    a.stages = std::move(r.stages);
    a.tnm = std::move(r.tnm);
  }
  return g;
}

}  // namespace guidegraph::enrich
