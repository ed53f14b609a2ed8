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

// Thesaurus search clients used for remote concept lookup.

#ifndef GUIDEGRAPH_ENRICH_THESAURUS_H_
#define GUIDEGRAPH_ENRICH_THESAURUS_H_

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/base/error.h"
#include "guidegraph/graph/graph.h"

namespace guidegraph::enrich {

class RemoteError : public Error {
 public:
  RemoteError(const std::string &cause, bool retryable)
      : Error(ErrorCategory::kInput, "RemoteError", cause),
        cause_(cause),
        retryable_(retryable) {}

  const std::string &cause() const { return cause_; }
  bool retryable() const { return retryable_; }

 private:
  std::string cause_;
  bool retryable_;
};

struct RemoteConcept {
  std::string code;
  std::string name;  // may be empty when the source gives only codes
};

class ThesaurusClient {
 public:
  virtual ~ThesaurusClient() = default;

  // "contains" search, results in source order. Must be safe to call from
  // several threads. Throws RemoteError.
  virtual std::vector<RemoteConcept> Search(const std::string &query) = 0;

  virtual graph::Scheme scheme() const { return graph::Scheme::kNcitLike; }
};

// Answers from a JSON fixture: {"query": ["C1", ...] | [{"code":..,"name":..}]}.
// Lookup is on the lowercased query; missing queries return nothing.
class StubThesaurusClient : public ThesaurusClient {
 public:
  explicit StubThesaurusClient(std::string_view fixture_json);

  // Makes every call (or calls for one query) fail.
  void FailAll(bool retryable) { fail_all_ = true, fail_retryable_ = retryable; }
  void FailQuery(const std::string &query) { failing_.insert(query); }

  std::vector<RemoteConcept> Search(const std::string &query) override;
  int calls() const;

 private:
  std::map<std::string, std::vector<RemoteConcept>> answers_;
  std::set<std::string> failing_;
  bool fail_all_ = false;
  bool fail_retryable_ = true;
  mutable std::mutex mu_;
  int calls_ = 0;
};

// GET <endpoint>?term=<query>&type=contains, expecting
// {"concepts": [{"code": ..., "name": ...}, ...]} as the EVS REST API returns.
class HttpThesaurusClient : public ThesaurusClient {
 public:
  explicit HttpThesaurusClient(std::string endpoint, int timeout_seconds = 10);

  std::vector<RemoteConcept> Search(const std::string &query) override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  int timeout_seconds_;
};

}  // namespace guidegraph::enrich

#endif  // GUIDEGRAPH_ENRICH_THESAURUS_H_
