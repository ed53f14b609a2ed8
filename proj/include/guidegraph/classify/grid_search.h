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

// Stratified k-fold cross-validated grid search.

#ifndef GUIDEGRAPH_CLASSIFY_GRID_SEARCH_H_
#define GUIDEGRAPH_CLASSIFY_GRID_SEARCH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/classify/model.h"

namespace guidegraph::classify {

class InsufficientClassMembers : public Error {
 public:
  InsufficientClassMembers(NodeClass c, int k)
      : Error(ErrorCategory::kInput, "InsufficientClassMembers",
              std::string(graph::NodeClassName(c)) + " has fewer than " +
                  std::to_string(k) + " members"),
        node_class_(c),
        k_(k) {}
  NodeClass node_class() const { return node_class_; }
  int k() const { return k_; }

 private:
  NodeClass node_class_;
  int k_;
};

// Fold index per row. Within each class members are shuffled and dealt
// round-robin; the dealing position carries over from class to class.
std::vector<int> StratifiedFolds(const LabeledDataset &dataset, int k, uint64_t seed);

struct ComboResult {
  PipelineParams params;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0;
};

struct GridResult {
  size_t best_index = 0;
  PipelineParams best_params;
  double best_mean_accuracy = 0;
  std::vector<ComboResult> table;
};

// Highest mean wins; ties go to the earliest combo.
size_t SelectBest(const std::vector<ComboResult> &table);

// Sees every fold model; may be called from several threads at once.
using FoldObserver = std::function<void(size_t combo, int fold, const LinearModel &model)>;

// The SGD seed of each (combo, fold) is derived from `seed`, so results do
// not depend on `jobs`.
GridResult GridSearchCv(const LabeledDataset &dataset, const std::vector<PipelineParams> &grid,
                        int k, uint64_t seed, int jobs = 1,
                        const FoldObserver &observer = nullptr);

// Grid file: either a list of combos or one object of value lists whose
// cartesian product is taken (keys in alphabetical order within each
// component, the last varying fastest). Component and key names follow the pipeline:
// {"CountVectorizer": {"max_df", "max_features", "ngram_range"},
//  "TfidfTransformer": {"use_idf", "norm"},
//  "SGDClassifier": {"max_iter", "alpha", "penalty", "l1_ratio"}}.
std::vector<PipelineParams> ParseGrid(std::string_view json);

std::string FormatGridResult(const GridResult &result);

}  // namespace guidegraph::classify

#endif  // GUIDEGRAPH_CLASSIFY_GRID_SEARCH_H_
