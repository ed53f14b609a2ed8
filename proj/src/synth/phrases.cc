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

#include "guidegraph/synth/phrases.h"

#include <set>

#include "guidegraph/base/rng.h"

namespace guidegraph::synth {
namespace {

PhrasePools BuildPools() {
  PhrasePools p;
  p.by_class = {
      // Evaluation
      {"H&P", "Chest CT with contrast", "PET/CT scan", "Brain MRI with contrast",
       "Pulmonary function tests", "Bronchoscopy", "Mediastinoscopy", "EBUS-guided biopsy",
       "Pathologic mediastinal lymph node evaluation", "Biomarker testing",
       "CBC and chemistry profile", "Molecular profiling for EGFR and ALK",
       "PD-L1 testing", "Bone scan if symptomatic", "Thoracentesis",
       "Multidisciplinary evaluation"},
      // Result
      {"Stable", "Progression", "No evidence of disease", "Negative margins (R0)",
       "Positive margins", "N2 nodes positive", "Residual disease", "Local recurrence",
       "Distant metastases", "Complete response", "Partial response",
       "EGFR mutation positive", "ALK rearrangement positive", "PD-L1 expression >= 50%",
       "Pleural effusion negative", "Stage IIIA, T1-2 N2"},
      // Decision
      {"Operable", "High risk", "Medically inoperable", "Resectable", "Unresectable",
       "Candidate for surgery", "Not a surgical candidate", "Symptomatic", "Asymptomatic",
       "Performance status 0-2", "Performance status 3-4", "Low risk",
       "Eligible for immunotherapy", "Contraindication to surgery", "Patient declines surgery",
       "Adequate pulmonary reserve"},
      // Action
      {"CT at 6-12 mo", "No routine follow-up", "Durvalumab", "Surgical resection",
       "Concurrent chemoradiation", "Adjuvant chemotherapy", "Observation", "SABR",
       "Lobectomy with lymph node dissection", "Osimertinib", "Pembrolizumab", "Definitive RT",
       "Systemic therapy", "Alectinib", "Smoking cessation", "Palliative RT"},
      // Uncertain
      {"See NSCL-2", "See Principles of Surgical Therapy (NSCL-B)", "Continued",
       "See Systemic Therapy (NSCL-K)", "Back to index", "See NSCL-7", "Footnotes on page",
       "See Discussion", "Version 1.2022", "See Evaluation (NSCL-1)", "Clinical trial preferred",
       "See Surveillance (NSCL-17)", "Index", "Table of contents", "Refer to text",
       "See NSCL-12"},
  };
  p.labels = {"CLINICAL PRESENTATION", "INITIAL EVALUATION", "PRETREATMENT EVALUATION",
              "CLINICAL STAGE", "FINDINGS", "ADJUVANT TREATMENT", "INITIAL TREATMENT",
              "SURVEILLANCE", "PATHOLOGIC STAGE", "TREATMENT", "RESULTS", "MARGINS"};
  p.footnotes = {"Based on biopsy.", "If not previously done.", "Consider PET/CT.",
                 "For T3 invasion.", "Include EGFR testing.", "Category 2B.",
                 "Per protocol.", "Preferred.", "See Discussion.", "Useful in some cases."};
  p.see_targets = {"NSCL-2", "NSCL-4", "NSCL-8", "Systemic Therapy", "Surveillance",
                   "NSCL-11"};
  return p;
}

const std::vector<std::vector<std::string>> &Qualifiers() {
  static const std::vector<std::vector<std::string>> q = {
      {"before treatment", "at diagnosis", "to assess extent", "with imaging",
       "as indicated", "for staging"},
      {"on imaging", "after therapy", "at follow-up", "on pathology", "confirmed",
       "detected"},
      {"per surgeon", "by tumor board", "based on comorbidities", "if feasible",
       "on assessment", "by patient preference"},
      {"every 6 mo", "for 2 y", "daily", "then annually", "with RT", "preferred"},
      {"page", "link", "section", "reference", "appendix", "footnote"},
  };
  return q;
}

const std::vector<std::string> &Filler() {
  static const std::vector<std::string> f = {"patients", "consider", "disease", "clinical"};
  return f;
}

}  // namespace

const PhrasePools &DefaultPools() {
  static const PhrasePools pools = BuildPools();
  return pools;
}

const std::vector<std::string> &ClassPool(const PhrasePools &pools, graph::NodeClass c) {
  return pools.by_class.at(static_cast<size_t>(c));
}

classify::LabeledDataset GenerateClassDataset(uint64_t seed, int n, const PhrasePools &pools) {
  Rng rng(DeriveSeed(seed, 0xc1a55));
  classify::LabeledDataset out;
  std::set<std::string> seen;
  for (int i = 0, attempts = 0; i < n && attempts < 100 * n; ++attempts) {
    size_t ci = static_cast<size_t>(i) % std::size(graph::kAllNodeClasses);
    graph::NodeClass c = graph::kAllNodeClasses[ci];
    std::string text = rng.Pick(ClassPool(pools, c));
    int quals = rng.UniformInt(0, 2);
    for (int k = 0; k < quals; ++k) text += " " + rng.Pick(Qualifiers()[ci]);
    if (rng.Bernoulli(0.2)) text += " " + rng.Pick(Filler());
    text = classify::NormalizeText(text);
    if (!seen.insert(text).second) continue;
    out.rows.push_back({text, c});
    ++i;
  }
  return out;
}

}  // namespace guidegraph::synth
