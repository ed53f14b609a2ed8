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

#include "guidegraph/classify/grid_search.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/rng.h"

namespace guidegraph::classify {
namespace {

constexpr uint64_t kFoldStream = 0xf01d;

double FoldAccuracy(const LabeledDataset &dataset, const std::vector<int> &folds, size_t combo,
                    int fold, PipelineParams params, uint64_t seed, const FoldObserver &observer) {
  LabeledDataset train, test;
  for (size_t i = 0; i < dataset.rows.size(); ++i) {
    (folds[i] == fold ? test : train).rows.push_back(dataset.rows[i]);
  }
  params.sgd.seed = seed;
  LinearModel model = Train(train, params);
  if (observer) observer(combo, fold, model);
  int correct = 0;
  for (const LabeledRow &row : test.rows) correct += Predict(model, row.text).label == row.label;
  return test.rows.empty() ? 0.0 : static_cast<double>(correct) / test.rows.size();
}

// Cartesian product of {"Component": {"key": [values...]}}.
std::vector<PipelineParams> ExpandProduct(const Json &spec) {
  RequireObject(spec, "$");
  struct Axis {
    std::string component, key;
    Json values;
  };
  std::vector<Axis> axes;
  for (const char *component : {"CountVectorizer", "TfidfTransformer", "SGDClassifier"}) {
    if (!spec.contains(component)) continue;
    const Json &c = RequireObject(spec[component], component);
    for (const auto &[key, values] : c.items()) {
      std::string path = JoinPath(component, key);
      const Json &list = RequireArray(values, path);
      if (list.empty()) throw SchemaViolation(path, "empty value list");
      axes.push_back({component, key, list});
    }
  }
  RejectUnknownKeys(spec, {"CountVectorizer", "TfidfTransformer", "SGDClassifier"}, "$");
  std::vector<PipelineParams> out;
  std::vector<size_t> at(axes.size(), 0);
  while (true) {
    Json combo = Json::object();
    for (size_t a = 0; a < axes.size(); ++a) {
      combo[axes[a].component][axes[a].key] = axes[a].values[at[a]];
    }
    out.push_back(ParamsFromJson(combo, IndexPath("grid", out.size())));
    size_t a = axes.size();
    while (a > 0 && ++at[a - 1] == axes[a - 1].values.size()) at[--a] = 0;
    if (a == 0) break;
  }
  return out;
}

}  // namespace

std::vector<int> StratifiedFolds(const LabeledDataset &dataset, int k, uint64_t seed) {
  if (k < 2) throw Error(ErrorCategory::kInput, "InvalidParameter", "k must be at least 2");
  std::vector<int> folds(dataset.rows.size(), -1);
  int position = 0;
  for (size_t ci = 0; ci < std::size(graph::kAllNodeClasses); ++ci) {
    NodeClass c = graph::kAllNodeClasses[ci];
    std::vector<size_t> members;
    for (size_t i = 0; i < dataset.rows.size(); ++i) {
      if (dataset.rows[i].label == c) members.push_back(i);
    }
    if (members.empty()) continue;
    if (static_cast<int>(members.size()) < k) throw InsufficientClassMembers(c, k);
    Rng rng(DeriveSeed(seed, kFoldStream, ci));
    rng.Shuffle(members);
    for (size_t i : members) folds[i] = position++ % k;
  }
  return folds;
}

size_t SelectBest(const std::vector<ComboResult> &table) {
  size_t best = 0;
  for (size_t i = 1; i < table.size(); ++i) {
    if (table[i].mean_accuracy > table[best].mean_accuracy) best = i;
  }
  return best;
}

GridResult GridSearchCv(const LabeledDataset &dataset, const std::vector<PipelineParams> &grid,
                        int k, uint64_t seed, int jobs, const FoldObserver &observer) {
  if (grid.empty()) throw Error(ErrorCategory::kInput, "InvalidParameter", "empty grid");
  std::vector<int> folds = StratifiedFolds(dataset, k, seed);
  GridResult result;
  result.table.resize(grid.size());
  for (size_t c = 0; c < grid.size(); ++c) {
    result.table[c].params = grid[c];
    result.table[c].fold_accuracy.assign(k, 0.0);
  }

  const size_t tasks = grid.size() * k;
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  size_t first_error_task = tasks;
  auto worker = [&] {
    for (size_t task; (task = next++) < tasks;) {
      size_t combo = task / k;
      int fold = static_cast<int>(task % k);
      try {
        result.table[combo].fold_accuracy[fold] =
            FoldAccuracy(dataset, folds, combo, fold, grid[combo],
                         DeriveSeed(seed, combo, fold), observer);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (task < first_error_task) {
          first_error_task = task;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::max(1, jobs); ++i) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  for (ComboResult &r : result.table) {
    double sum = 0;
    for (double a : r.fold_accuracy) sum += a;
    r.mean_accuracy = sum / k;
  }
  result.best_index = SelectBest(result.table);
  result.best_params = result.table[result.best_index].params;
  result.best_mean_accuracy = result.table[result.best_index].mean_accuracy;
  return result;
}

std::vector<PipelineParams> ParseGrid(std::string_view json) {
  Json doc = ParseJson(json);
  if (!doc.is_array()) return ExpandProduct(doc);
  std::vector<PipelineParams> out;
  for (size_t i = 0; i < doc.size(); ++i)
    out.push_back(ParamsFromJson(doc[i], IndexPath("grid", i)));
  if (out.empty()) throw SchemaViolation("$", "empty grid");
  return out;
}

std::string FormatGridResult(const GridResult &result) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "combo\tmean_accuracy\tfold_accuracy\tparams\n";
  for (size_t i = 0; i < result.table.size(); ++i) {
    const ComboResult &r = result.table[i];
    out << i << '\t' << r.mean_accuracy << '\t';
    for (size_t f = 0; f < r.fold_accuracy.size(); ++f) {
      out << (f ? "," : "") << r.fold_accuracy[f];
    }
    Json params = ParamsToJson(r.params);
    params["SGDClassifier"].erase("seed");
    out << '\t' << params.dump() << '\n';
  }
  out << "best\t" << result.best_index << '\t' << result.best_mean_accuracy << '\n';
  return out.str();
}

}  // namespace guidegraph::classify
