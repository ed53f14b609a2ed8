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

// JSON-LD form of the guideline graph; the key set is documented in
// docs/schema.md. Output is canonical: sorted keys, nodes in natural id
// order, then footnotes, then warnings.

#ifndef GUIDEGRAPH_SERIALIZE_JSONLD_H_
#define GUIDEGRAPH_SERIALIZE_JSONLD_H_

#include <string>
#include <string_view>

#include "guidegraph/base/error.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::serialize {

inline constexpr char kDefaultBaseIri[] = "urn:guidegraph:document";
inline constexpr char kVocabularyIri[] = "urn:guidegraph:vocab#";

struct JsonLdOptions {
  std::string base_iri = kDefaultBaseIri;
};

std::string ToJsonLd(const graph::GuidelineGraph &g, const JsonLdOptions &options = {});

// Throws SchemaViolation, DanglingReference or AsymmetricEdge.
graph::GuidelineGraph FromJsonLd(std::string_view text);

class DanglingReference : public Error {
 public:
  explicit DanglingReference(const std::string &id)
      : Error(ErrorCategory::kInput, "DanglingReference", "no object with @id " + id),
        id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

class AsymmetricEdge : public Error {
 public:
  AsymmetricEdge(const std::string &from, const std::string &to)
      : Error(ErrorCategory::kInput, "AsymmetricEdge",
              from + " -> " + to + " is not listed in both next and previous"),
        from_(from),
        to_(to) {}
  const std::string &from() const { return from_; }
  const std::string &to() const { return to_; }

 private:
  std::string from_;
  std::string to_;
};

}  // namespace guidegraph::serialize

#endif  // GUIDEGRAPH_SERIALIZE_JSONLD_H_
