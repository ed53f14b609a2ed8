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

// Bag-of-n-grams features: tokenizer, vocabulary and tf-idf weighting.

#ifndef GUIDEGRAPH_CLASSIFY_FEATURES_H_
#define GUIDEGRAPH_CLASSIFY_FEATURES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guidegraph/base/error.h"

namespace guidegraph::classify {

class EmptyVocabulary : public Error {
 public:
  EmptyVocabulary()
      : Error(ErrorCategory::kInput, "EmptyVocabulary", "no terms survive filtering") {}
};

// Lowercased maximal runs of ASCII letters and digits, at least two long.
std::vector<std::string> Tokenize(std::string_view text);

// Space-joined n-grams of orders lo..hi, unigrams first.
std::vector<std::string> Ngrams(const std::vector<std::string> &tokens, int lo, int hi);

struct VocabularyParams {
  double max_df = 1.0;
  int max_features = 50000;
  int ngram_lo = 1;
  int ngram_hi = 2;

  bool operator==(const VocabularyParams &) const = default;
};

struct Vocabulary {
  std::vector<std::string> terms;  // sorted
  std::map<std::string, int> index;
  std::vector<int> document_frequency;
  int n_documents = 0;
  VocabularyParams params;

  int size() const { return static_cast<int>(terms.size()); }
  void RebuildIndex();
};

Vocabulary FitVocabulary(const std::vector<std::string> &corpus,
                         const VocabularyParams &params = {});

// (term index, value), sorted by index, no zeros.
using SparseVector = std::vector<std::pair<int, double>>;

SparseVector TransformCounts(const Vocabulary &vocab, std::string_view text);

enum class Norm { kNone, kL1, kL2 };
const char *NormName(Norm norm);  // "none" / "l1" / "l2"
std::optional<Norm> ParseNorm(std::string_view name);

struct TfidfParams {
  bool use_idf = true;
  Norm norm = Norm::kL2;

  bool operator==(const TfidfParams &) const = default;
};

// Smooth idf: ln((1 + n) / (1 + df)) + 1.
std::vector<double> ComputeIdf(const Vocabulary &vocab);

// `idf` is ignored when use_idf is false.
SparseVector TfidfTransform(const SparseVector &counts, const std::vector<double> &idf,
                            const TfidfParams &params);

}  // namespace guidegraph::classify

#endif  // GUIDEGRAPH_CLASSIFY_FEATURES_H_
