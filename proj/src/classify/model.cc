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

#include "guidegraph/classify/model.h"

#include <algorithm>
#include <cmath>

#include "guidegraph/base/rng.h"
#include "guidegraph/base/util.h"

namespace guidegraph::classify {
namespace {

constexpr double kInterceptDecay = 0.01;
constexpr const char *kModelFormat = "guidegraph-linear-model";

double Dot(const std::vector<double> &w, const SparseVector &x) {
  double sum = 0;
  for (const auto &[i, v] : x) sum += w[i] * v;
  return sum;
}

// Trains one binary hinge-loss separator. Weights are kept as scale * v so
// that the L2 shrink is O(1) per step; the L1 part uses truncated gradient
// with a cumulative penalty.
void TrainBinary(const std::vector<SparseVector> &xs, const std::vector<double> &ys,
                 const SgdParams &p, uint64_t seed, std::vector<double> &w, double &b) {
  const size_t dim = w.size();
  std::vector<double> v(dim, 0.0), q(dim, 0.0);
  double scale = 1.0, u = 0.0;
  b = 0.0;
  double l1 = p.penalty == Penalty::kL1 ? 1.0 : p.penalty == Penalty::kL2 ? 0.0 : p.l1_ratio;
  const double typw = std::sqrt(1.0 / std::sqrt(p.alpha));
  const double t0 = 1.0 / (typw * p.alpha);
  double t = 1.0;

  Rng rng(seed);
  std::vector<size_t> order(xs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int epoch = 0; epoch < p.max_iter; ++epoch) {
    rng.Shuffle(order);
    for (size_t i : order) {
      const SparseVector &x = xs[i];
      const double y = ys[i];
      double pred = scale * Dot(v, x) + b;
      double eta = 1.0 / (p.alpha * (t + t0));
      double update = y * pred <= 1.0 ? eta * y : 0.0;
      if (l1 < 1.0) scale *= std::max(0.0, 1.0 - (1.0 - l1) * eta * p.alpha);
      if (scale < 1e-9) {
        for (double &vi : v) vi *= scale;
        scale = 1.0;
      }
      if (update != 0.0) {
        for (const auto &[j, xj] : x) v[j] += update * xj / scale;
        b += update * kInterceptDecay;
      }
      if (l1 > 0.0) {
        u += l1 * eta * p.alpha;
        for (const auto &[j, xj] : x) {
          double z = scale * v[j];
          double nw = z;
          if (z > 0) {
            nw = std::max(0.0, z - (u + q[j]));
          } else if (z < 0) {
            nw = std::min(0.0, z + (u - q[j]));
          }
          v[j] = nw / scale;
          q[j] += nw - z;
        }
      }
      t += 1.0;
    }
  }
  for (size_t j = 0; j < dim; ++j) w[j] = scale * v[j];
}

const Json &Field(const Json &obj, const std::string &key, const std::string &path) {
  return RequireKey(obj, key, path);
}

}  // namespace

std::string NormalizeText(std::string_view text) { return CollapseWhitespace(AsciiLower(text)); }

LabeledDataset BuildDataset(const graph::GuidelineGraph &g,
                            const std::map<std::string, NodeClass> &labels) {
  std::vector<std::string> order;
  std::map<std::string, std::optional<NodeClass>> by_text;
  for (const graph::NodeBlock &node : g.nodes) {
    std::string text = NormalizeText(graph::JoinedContent(node));
    auto [it, inserted] = by_text.insert({text, std::nullopt});
    if (inserted) order.push_back(text);
    auto label = labels.find(node.id);
    if (!it->second && label != labels.end()) it->second = label->second;
  }
  LabeledDataset out;
  for (const std::string &text : order) {
    const std::optional<NodeClass> &label = by_text.at(text);
    if (!label) throw MissingLabel(text);
    out.rows.push_back({text, *label});
  }
  return out;
}

LabeledDataset ParseDatasetTsv(std::string_view tsv) {
  LabeledDataset out;
  std::vector<std::string> lines = Split(tsv, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::string path = "line " + std::to_string(i + 1);
    size_t tab = line.find('\t');
    if (tab == std::string::npos) throw SchemaViolation(path, "expected label<TAB>text");
    std::optional<NodeClass> label = graph::ParseNodeClass(line.substr(0, tab));
    if (!label) throw SchemaViolation(path, "unknown class '" + line.substr(0, tab) + "'");
    out.rows.push_back({NormalizeText(line.substr(tab + 1)), *label});
  }
  return out;
}

std::string FormatDatasetTsv(const LabeledDataset &dataset) {
  std::string out;
  for (const LabeledRow &row : dataset.rows) {
    out += graph::NodeClassName(row.label);
    out += '\t';
    out += row.text;
    out += '\n';
  }
  return out;
}

const char *PenaltyName(Penalty p) {
  switch (p) {
    case Penalty::kL2: return "l2";
    case Penalty::kL1: return "l1";
    case Penalty::kElasticNet: return "elasticnet";
  }
  return "l2";
}

std::optional<Penalty> ParsePenalty(std::string_view name) {
  std::string lower = AsciiLower(name);
  if (lower == "l2") return Penalty::kL2;
  if (lower == "l1") return Penalty::kL1;
  if (lower == "elasticnet") return Penalty::kElasticNet;
  return std::nullopt;
}

Json ParamsToJson(const PipelineParams &p) {
  return {
      {"CountVectorizer",
       {{"max_df", p.vocabulary.max_df},
        {"max_features", p.vocabulary.max_features},
        {"ngram_range", {p.vocabulary.ngram_lo, p.vocabulary.ngram_hi}}}},
      {"TfidfTransformer", {{"use_idf", p.tfidf.use_idf}, {"norm", NormName(p.tfidf.norm)}}},
      {"SGDClassifier",
       {{"alpha", p.sgd.alpha},
        {"penalty", PenaltyName(p.sgd.penalty)},
        {"l1_ratio", p.sgd.l1_ratio},
        {"max_iter", p.sgd.max_iter},
        {"seed", p.sgd.seed}}},
  };
}

PipelineParams ParamsFromJson(const Json &j, const std::string &path) {
  PipelineParams p;
  RequireObject(j, path);
  RejectUnknownKeys(j, {"CountVectorizer", "TfidfTransformer", "SGDClassifier"}, path);
  if (j.contains("CountVectorizer")) {
    std::string at = JoinPath(path, "CountVectorizer");
    const Json &c = RequireObject(j["CountVectorizer"], at);
    RejectUnknownKeys(c, {"max_df", "max_features", "ngram_range"}, at);
    if (c.contains("max_df")) {
      p.vocabulary.max_df = RequireNumber(c["max_df"], JoinPath(at, "max_df"));
      if (p.vocabulary.max_df <= 0 || p.vocabulary.max_df > 1) {
        throw SchemaViolation(JoinPath(at, "max_df"), "must be in (0, 1]");
      }
    }
    if (c.contains("max_features")) {
      p.vocabulary.max_features =
          static_cast<int>(RequireInt(c["max_features"], JoinPath(at, "max_features")));
      if (p.vocabulary.max_features < 1) {
        throw SchemaViolation(JoinPath(at, "max_features"), "must be positive");
      }
    }
    if (c.contains("ngram_range")) {
      std::string nr = JoinPath(at, "ngram_range");
      const Json &r = RequireArray(c["ngram_range"], nr);
      if (r.size() != 2) throw SchemaViolation(nr, "expected [lo, hi]");
      p.vocabulary.ngram_lo = static_cast<int>(RequireInt(r[0], IndexPath(nr, 0)));
      p.vocabulary.ngram_hi = static_cast<int>(RequireInt(r[1], IndexPath(nr, 1)));
      if (p.vocabulary.ngram_lo < 1 || p.vocabulary.ngram_hi < p.vocabulary.ngram_lo) {
        throw SchemaViolation(nr, "need 1 <= lo <= hi");
      }
    }
  }
  if (j.contains("TfidfTransformer")) {
    std::string at = JoinPath(path, "TfidfTransformer");
    const Json &c = RequireObject(j["TfidfTransformer"], at);
    RejectUnknownKeys(c, {"use_idf", "norm"}, at);
    if (c.contains("use_idf")) p.tfidf.use_idf = RequireBool(c["use_idf"], JoinPath(at, "use_idf"));
    if (c.contains("norm")) {
      std::optional<Norm> n = c["norm"].is_null()
                                  ? std::optional<Norm>(Norm::kNone)
                                  : ParseNorm(RequireString(c["norm"], JoinPath(at, "norm")));
      if (!n) throw SchemaViolation(JoinPath(at, "norm"), "expected l1, l2 or none");
      p.tfidf.norm = *n;
    }
  }
  if (j.contains("SGDClassifier")) {
    std::string at = JoinPath(path, "SGDClassifier");
    const Json &c = RequireObject(j["SGDClassifier"], at);
    RejectUnknownKeys(c, {"alpha", "penalty", "l1_ratio", "max_iter", "seed"}, at);
    if (c.contains("alpha")) {
      p.sgd.alpha = RequireNumber(c["alpha"], JoinPath(at, "alpha"));
      if (p.sgd.alpha <= 0) throw SchemaViolation(JoinPath(at, "alpha"), "must be positive");
    }
    if (c.contains("penalty")) {
      std::optional<Penalty> pen =
          ParsePenalty(RequireString(c["penalty"], JoinPath(at, "penalty")));
      if (!pen) throw SchemaViolation(JoinPath(at, "penalty"), "expected l2, l1 or elasticnet");
      p.sgd.penalty = *pen;
    }
    if (c.contains("l1_ratio")) {
      p.sgd.l1_ratio = RequireNumber(c["l1_ratio"], JoinPath(at, "l1_ratio"));
      if (p.sgd.l1_ratio < 0 || p.sgd.l1_ratio > 1) {
        throw SchemaViolation(JoinPath(at, "l1_ratio"), "must be in [0, 1]");
      }
    }
    if (c.contains("max_iter")) {
      p.sgd.max_iter = static_cast<int>(RequireInt(c["max_iter"], JoinPath(at, "max_iter")));
      if (p.sgd.max_iter < 1) throw SchemaViolation(JoinPath(at, "max_iter"), "must be positive");
    }
    if (c.contains("seed")) {
      const Json &s = c["seed"];
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<int64_t>() >= 0)) {
        throw SchemaViolation(JoinPath(at, "seed"), "expected a non-negative integer");
      }
      p.sgd.seed = s.get<uint64_t>();
    }
  }
  return p;
}

LinearModel Train(const LabeledDataset &dataset, const PipelineParams &params) {
  LinearModel m;
  for (NodeClass c : graph::kAllNodeClasses) {
    bool present = std::any_of(dataset.rows.begin(), dataset.rows.end(),
                               [c](const LabeledRow &r) { return r.label == c; });
    if (present) m.classes.push_back(c);
  }
  if (m.classes.size() < 2) {
    throw DegenerateDataset("need at least two classes, found " +
                            std::to_string(m.classes.size()));
  }
  std::vector<std::string> corpus;
  for (const LabeledRow &r : dataset.rows) corpus.push_back(r.text);
  m.vocabulary = FitVocabulary(corpus, params.vocabulary);
  m.tfidf = params.tfidf;
  if (m.tfidf.use_idf) m.idf = ComputeIdf(m.vocabulary);
  m.sgd = params.sgd;

  std::vector<SparseVector> xs;
  for (const std::string &doc : corpus) {
    xs.push_back(TfidfTransform(TransformCounts(m.vocabulary, doc), m.idf, m.tfidf));
  }
  for (size_t ci = 0; ci < m.classes.size(); ++ci) {
    std::vector<double> ys;
    for (const LabeledRow &r : dataset.rows) ys.push_back(r.label == m.classes[ci] ? 1.0 : -1.0);
    std::vector<double> w(m.vocabulary.size(), 0.0);
    double b = 0;
    TrainBinary(xs, ys, params.sgd, DeriveSeed(params.sgd.seed, ci), w, b);
    m.weights.push_back(std::move(w));
    m.bias.push_back(b);
  }
  return m;
}

Prediction Predict(const LinearModel &model, std::string_view text) {
  SparseVector x = TfidfTransform(TransformCounts(model.vocabulary, NormalizeText(text)),
                                  model.idf, model.tfidf);
  Prediction out;
  size_t best = 0;
  for (size_t ci = 0; ci < model.classes.size(); ++ci) {
    out.scores.push_back(Dot(model.weights[ci], x) + model.bias[ci]);
    if (out.scores[ci] > out.scores[best]) best = ci;
  }
  out.label = model.classes.at(best);
  return out;
}

graph::GuidelineGraph AnnotateClasses(graph::GuidelineGraph g, const LinearModel &model) {
  for (const graph::NodeBlock &node : g.nodes) {
    g.annotations[node.id].node_class = Predict(model, graph::JoinedContent(node)).label;
  }
  return g;
}

std::string SaveModel(const LinearModel &model) {
  PipelineParams params{model.vocabulary.params, model.tfidf, model.sgd};
  Json classes = Json::array();
  for (NodeClass c : model.classes) classes.push_back(graph::NodeClassName(c));
  Json doc = {
      {"format", kModelFormat},
      {"version", 1},
      {"params", ParamsToJson(params)},
      {"classes", classes},
      {"vocabulary",
       {{"terms", model.vocabulary.terms},
        {"document_frequency", model.vocabulary.document_frequency},
        {"n_documents", model.vocabulary.n_documents}}},
      {"idf", model.idf},
      {"weights", model.weights},
      {"bias", model.bias},
  };
  doc["digest"] = Sha256Hex(doc.dump());
  return doc.dump(1) + "\n";
}

namespace {

LinearModel LoadModelUnchecked(std::string_view text) {
  Json doc = ParseJson(text);
  RequireObject(doc, "$");
  RejectUnknownKeys(doc, {"format", "version", "params", "classes", "vocabulary", "idf",
                          "weights", "bias", "digest"}, "$");
  std::string digest = RequireString(Field(doc, "digest", "$"), "digest");
  Json body = doc;
  body.erase("digest");
  if (Sha256Hex(body.dump()) != digest) throw SchemaViolation("digest", "content does not match");
  if (RequireString(Field(doc, "format", "$"), "format") != kModelFormat ||
      RequireInt(Field(doc, "version", "$"), "version") != 1) {
    throw SchemaViolation("format", "not a version 1 model file");
  }

  LinearModel m;
  PipelineParams params = ParamsFromJson(Field(doc, "params", "$"), "params");
  m.tfidf = params.tfidf;
  m.sgd = params.sgd;
  const Json &classes = RequireArray(Field(doc, "classes", "$"), "classes");
  for (size_t i = 0; i < classes.size(); ++i) {
    std::optional<NodeClass> c =
        graph::ParseNodeClass(RequireString(classes[i], IndexPath("classes", i)));
    if (!c) throw SchemaViolation(IndexPath("classes", i), "unknown class");
    m.classes.push_back(*c);
  }
  const Json &vocab = RequireObject(Field(doc, "vocabulary", "$"), "vocabulary");
  m.vocabulary.params = params.vocabulary;
  m.vocabulary.terms = Field(vocab, "terms", "vocabulary").get<std::vector<std::string>>();
  m.vocabulary.document_frequency =
      Field(vocab, "document_frequency", "vocabulary").get<std::vector<int>>();
  m.vocabulary.n_documents = static_cast<int>(
      RequireInt(Field(vocab, "n_documents", "vocabulary"), "vocabulary.n_documents"));
  m.vocabulary.RebuildIndex();
  m.idf = Field(doc, "idf", "$").get<std::vector<double>>();
  m.weights = Field(doc, "weights", "$").get<std::vector<std::vector<double>>>();
  m.bias = Field(doc, "bias", "$").get<std::vector<double>>();

  const size_t dim = m.vocabulary.terms.size();
  if (m.vocabulary.document_frequency.size() != dim) {
    throw SchemaViolation("vocabulary.document_frequency", "length differs from terms");
  }
  if (m.tfidf.use_idf && m.idf.size() != dim) throw SchemaViolation("idf", "length mismatch");
  if (m.weights.size() != m.classes.size() || m.bias.size() != m.classes.size()) {
    throw SchemaViolation("weights", "one row per class expected");
  }
  for (size_t i = 0; i < m.weights.size(); ++i) {
    if (m.weights[i].size() != dim)
      throw SchemaViolation(IndexPath("weights", i), "length mismatch");
  }
  return m;
}

}  // namespace

LinearModel LoadModel(std::string_view text) {
  try {
    return LoadModelUnchecked(text);
  } catch (const Json::exception &e) {
    throw SchemaViolation("$", e.what());
  }
}

}  // namespace guidegraph::classify
