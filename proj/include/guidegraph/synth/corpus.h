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

// Synthetic guideline-style PDFs with exact ground truth.
//
// Page model: landscape letter pages with N columns of text blocks, an
// optional underlined header per column, vertical separators between
// columns, arrows with triangular heads (down a column, and elbowed from one
// column into the next), bottom-band footnotes referenced by superscript
// letters, and link annotations to the following page.

#ifndef GUIDEGRAPH_SYNTH_CORPUS_H_
#define GUIDEGRAPH_SYNTH_CORPUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/base/error.h"
#include "guidegraph/base/json_util.h"
#include "guidegraph/graph/graph.h"
#include "guidegraph/synth/phrases.h"

namespace guidegraph::synth {

inline constexpr double kPageWidth = 792;
inline constexpr double kPageHeight = 612;

struct CorpusSpec {
  uint64_t seed = 0;
  int pages = 1;
  int columns_per_page = 3;
  int nodes_per_column = 3;
  double edge_density = 0.6;
  double footnote_rate = 0.2;
  double cross_page_link_rate = 0.5;
  double jitter_pt = 0;
  PhrasePools vocabulary = DefaultPools();

  bool operator==(const CorpusSpec &) const = default;
};

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string &msg)
      : Error(ErrorCategory::kInput, "InvalidSpec", msg) {}
};

void ValidateSpec(const CorpusSpec &spec);

// Same document, every placed element offset by seeded uniform noise in
// [-jitter_pt, +jitter_pt] per axis. Truth is unaffected.
CorpusSpec Perturb(CorpusSpec spec, double jitter_pt);

// Mixed shapes used for corpora: 1-2 pages, 2-5 columns, 2-6 nodes.
CorpusSpec CorpusSpecForSeed(uint64_t seed, double jitter_pt = 0);

struct GeneratedDocument {
  std::string pdf;
  // Canonical, with node_class annotations on every node.
  graph::GuidelineGraph truth;
};

GeneratedDocument GenerateDocument(const CorpusSpec &spec);

// Generates in parallel; results keep the order of `specs`.
std::vector<GeneratedDocument> GenerateCorpus(const std::vector<CorpusSpec> &specs,
                                              int jobs = 1);

// The vocabulary is written only when it differs from the default pools.
Json SpecToJson(const CorpusSpec &spec);
CorpusSpec SpecFromJson(const Json &j, const std::string &path = "$");

struct ManifestEntry {
  std::string pdf_path;
  std::string truth_path;
  CorpusSpec spec;

  bool operator==(const ManifestEntry &) const = default;
};

std::string FormatManifest(const std::vector<ManifestEntry> &entries);
std::vector<ManifestEntry> ParseManifest(std::string_view text);

}  // namespace guidegraph::synth

#endif  // GUIDEGRAPH_SYNTH_CORPUS_H_
