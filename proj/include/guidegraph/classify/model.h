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

// One-vs-rest linear node classifier trained by SGD with hinge loss, plus
// the labelled dataset it learns from.

#ifndef GUIDEGRAPH_CLASSIFY_MODEL_H_
#define GUIDEGRAPH_CLASSIFY_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/base/json_util.h"
#include "guidegraph/classify/features.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::classify {

using graph::NodeClass;

class MissingLabel : public Error {
 public:
  explicit MissingLabel(const std::string &text)
      : Error(ErrorCategory::kInput, "MissingLabel", "no label for text '" + text + "'"),
        text_(text) {}
  const std::string &text() const { return text_; }

 private:
  std::string text_;
};

class DegenerateDataset : public Error {
 public:
  explicit DegenerateDataset(const std::string &detail)
      : Error(ErrorCategory::kInput, "DegenerateDataset", detail) {}
};

struct LabeledRow {
  std::string text;
  NodeClass label = NodeClass::kUncertain;

  bool operator==(const LabeledRow &) const = default;
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;
};

// Lowercase and collapse whitespace.
std::string NormalizeText(std::string_view text);

// One row per distinct normalized node text, in node order. A text takes
// the label of the first node carrying it that has one.
LabeledDataset BuildDataset(const graph::GuidelineGraph &g,
                            const std::map<std::string, NodeClass> &labels);

// `label<TAB>text` lines. Text is normalized; duplicates are kept.
LabeledDataset ParseDatasetTsv(std::string_view tsv);
std::string FormatDatasetTsv(const LabeledDataset &dataset);

enum class Penalty { kL2, kL1, kElasticNet };
const char *PenaltyName(Penalty p);  // "l2" / "l1" / "elasticnet"
std::optional<Penalty> ParsePenalty(std::string_view name);

struct SgdParams {
  double alpha = 1e-5;
  Penalty penalty = Penalty::kElasticNet;
  double l1_ratio = 0.15;
  int max_iter = 10;
  uint64_t seed = 0;

  bool operator==(const SgdParams &) const = default;
};

struct PipelineParams {
  VocabularyParams vocabulary;
  TfidfParams tfidf;
  SgdParams sgd;

  bool operator==(const PipelineParams &) const = default;
};

// Component-keyed JSON shared by model files and grid files. Missing keys
// keep their defaults; unknown keys raise SchemaViolation.
Json ParamsToJson(const PipelineParams &params);
PipelineParams ParamsFromJson(const Json &j, const std::string &path = "$");

struct LinearModel {
  Vocabulary vocabulary;
  TfidfParams tfidf;
  std::vector<double> idf;
  std::vector<NodeClass> classes;
  std::vector<std::vector<double>> weights;  // [class][term]
  std::vector<double> bias;
  SgdParams sgd;
};

LinearModel Train(const LabeledDataset &dataset, const PipelineParams &params);

struct Prediction {
  NodeClass label = NodeClass::kUncertain;
  std::vector<double> scores;  // aligned with model.classes
};

Prediction Predict(const LinearModel &model, std::string_view text);

// Sets node_class on every node from its normalized joined content.
graph::GuidelineGraph AnnotateClasses(graph::GuidelineGraph g, const LinearModel &model);

// Self-describing JSON with a SHA-256 digest over everything else. Load
// verifies the digest and raises SchemaViolation("digest") on mismatch.
std::string SaveModel(const LinearModel &model);
LinearModel LoadModel(std::string_view text);

}  // namespace guidegraph::classify

#endif  // GUIDEGRAPH_CLASSIFY_MODEL_H_
