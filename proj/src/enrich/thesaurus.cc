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

#include "guidegraph/enrich/thesaurus.h"

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"
#include "httplib.h"

namespace guidegraph::enrich {
namespace {

std::string StringField(const Json &obj, const std::string &key, const std::string &path) {
  return RequireString(RequireKey(obj, key, path), JoinPath(path, key));
}

}  // namespace

StubThesaurusClient::StubThesaurusClient(std::string_view fixture_json) {
  Json doc = ParseJson(fixture_json);
  RequireObject(doc, "$");
  for (const auto &[query, list] : doc.items()) {
    RequireArray(list, query);
    std::vector<RemoteConcept> &out = answers_[AsciiLower(query)];
    for (size_t i = 0; i < list.size(); ++i) {
      const Json &item = list[i];
      std::string path = IndexPath(query, i);
      if (item.is_string()) {
        out.push_back({item.get<std::string>(), ""});
      } else {
        RequireObject(item, path);
        RejectUnknownKeys(item, {"code", "name"}, path);
        out.push_back({StringField(item, "code", path),
                       item.contains("name") ? StringField(item, "name", path)
                                             : std::string()});
      }
    }
  }
}

std::vector<RemoteConcept> StubThesaurusClient::Search(const std::string &query) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
  }
  if (fail_all_) throw RemoteError("stub configured to fail", fail_retryable_);
  if (failing_.count(query)) throw RemoteError("stub failure for " + query, false);
  auto it = answers_.find(AsciiLower(query));
  return it == answers_.end() ? std::vector<RemoteConcept>{} : it->second;
}

int StubThesaurusClient::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

HttpThesaurusClient::HttpThesaurusClient(std::string endpoint, int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  size_t scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCategory::kInput, "InvalidEndpoint", endpoint);
  }
  size_t path_start = endpoint.find('/', scheme_end + 3);
  origin_ = endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
}

std::vector<RemoteConcept> HttpThesaurusClient::Search(const std::string &query) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  if (!client.is_valid()) {
    throw RemoteError("cannot create client for " + origin_, false);
  }
  httplib::Params params = {{"term", query}, {"type", "contains"}};
  httplib::Result res = client.Get(path_, params, httplib::Headers{});
  if (!res) {
    throw RemoteError("transport: " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw RemoteError("HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw RemoteError("HTTP " + std::to_string(res->status), false);
  }
  std::vector<RemoteConcept> out;
  try {
    Json doc = ParseJson(res->body);
    RequireObject(doc, "$");
    if (!doc.contains("concepts")) return out;
    const Json &list = RequireArray(doc["concepts"], "concepts");
    for (size_t i = 0; i < list.size(); ++i) {
      std::string path = IndexPath("concepts", i);
      RequireObject(list[i], path);
      std::string name = list[i].contains("name") && list[i]["name"].is_string()
                             ? list[i]["name"].get<std::string>()
                             : "";
      out.push_back({StringField(list[i], "code", path), name});
    }
  } catch (const SchemaViolation &e) {
    throw RemoteError(std::string("protocol: ") + e.what(), false);
  }
  return out;
}

}  // namespace guidegraph::enrich
