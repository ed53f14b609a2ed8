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

#include "guidegraph/classify/features.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "guidegraph/base/util.h"

namespace guidegraph::classify {

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (size_t i = 0; i < text.size();) {
    if (!IsAsciiAlnum(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && IsAsciiAlnum(text[j])) ++j;
    if (j - i >= 2) out.push_back(AsciiLower(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::vector<std::string> Ngrams(const std::vector<std::string> &tokens, int lo, int hi) {
  std::vector<std::string> out;
  for (int n = lo; n <= hi; ++n) {
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (int k = 1; k < n; ++k) gram += " " + tokens[i + k];
      out.push_back(std::move(gram));
    }
  }
  return out;
}

void Vocabulary::RebuildIndex() {
  index.clear();
  for (size_t i = 0; i < terms.size(); ++i) index[terms[i]] = static_cast<int>(i);
}

Vocabulary FitVocabulary(const std::vector<std::string> &corpus, const VocabularyParams &params) {
  if (params.ngram_lo < 1 || params.ngram_hi < params.ngram_lo) {
    throw Error(ErrorCategory::kInput, "InvalidParameter", "ngram_range");
  }
  std::map<std::string, std::pair<int, long>> stats;  // term -> (df, total count)
  for (const std::string &doc : corpus) {
    std::vector<std::string> grams = Ngrams(Tokenize(doc), params.ngram_lo, params.ngram_hi);
    std::set<std::string> seen;
    for (std::string &g : grams) {
      auto &s = stats[g];
      ++s.second;
      if (seen.insert(g).second) ++s.first;
    }
  }
  const double n = static_cast<double>(corpus.size());
  std::vector<std::pair<std::string, std::pair<int, long>>> kept;
  for (auto &[term, s] : stats) {
    if (s.first / n <= params.max_df) kept.push_back({term, s});
  }
  if (params.max_features >= 0 && kept.size() > static_cast<size_t>(params.max_features)) {
    std::stable_sort(kept.begin(), kept.end(), [](const auto &a, const auto &b) {
      return a.second.second > b.second.second;  // map order breaks ties lexicographically
    });
    kept.resize(params.max_features);
    std::sort(kept.begin(), kept.end());
  }
  if (kept.empty()) throw EmptyVocabulary();
  Vocabulary v;
  v.params = params;
  v.n_documents = static_cast<int>(corpus.size());
  for (auto &[term, s] : kept) {
    v.terms.push_back(term);
    v.document_frequency.push_back(s.first);
  }
  v.RebuildIndex();
  return v;
}

SparseVector TransformCounts(const Vocabulary &vocab, std::string_view text) {
  std::map<int, double> counts;
  for (const std::string &g :
       Ngrams(Tokenize(text), vocab.params.ngram_lo, vocab.params.ngram_hi)) {
    auto it = vocab.index.find(g);
    if (it != vocab.index.end()) counts[it->second] += 1;
  }
  return SparseVector(counts.begin(), counts.end());
}

const char *NormName(Norm norm) {
  switch (norm) {
    case Norm::kNone: return "none";
    case Norm::kL1: return "l1";
    case Norm::kL2: return "l2";
  }
  return "none";
}

std::optional<Norm> ParseNorm(std::string_view name) {
  std::string lower = AsciiLower(name);
  if (lower == "none") return Norm::kNone;
  if (lower == "l1") return Norm::kL1;
  if (lower == "l2") return Norm::kL2;
  return std::nullopt;
}

std::vector<double> ComputeIdf(const Vocabulary &vocab) {
  std::vector<double> idf(vocab.terms.size());
  for (size_t i = 0; i < idf.size(); ++i) {
    idf[i] = std::log((1.0 + vocab.n_documents) / (1.0 + vocab.document_frequency[i])) + 1.0;
  }
  return idf;
}

SparseVector TfidfTransform(const SparseVector &counts, const std::vector<double> &idf,
                            const TfidfParams &params) {
  SparseVector out = counts;
  if (params.use_idf) {
    for (auto &[i, v] : out) v *= idf.at(i);
  }
  double norm = 0;
  if (params.norm == Norm::kL1) {
    for (auto &[i, v] : out) norm += std::abs(v);
  } else if (params.norm == Norm::kL2) {
    for (auto &[i, v] : out) norm += v * v;
    norm = std::sqrt(norm);
  }
  if (norm > 0) {
    for (auto &[i, v] : out) v /= norm;
  }
  return out;
}

}  // namespace guidegraph::classify
