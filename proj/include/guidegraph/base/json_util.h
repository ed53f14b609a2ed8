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

// Helpers for reading JSON documents with precise schema errors, and for
// writing canonical JSON with fixed-precision coordinates.

#ifndef GUIDEGRAPH_BASE_JSON_UTIL_H_
#define GUIDEGRAPH_BASE_JSON_UTIL_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace guidegraph {

using Json = nlohmann::json;

// Parses text; malformed JSON raises SchemaViolation("$").
Json ParseJson(std::string_view text);

// Accessors throwing SchemaViolation(path) on absence or type mismatch.
// Paths look like "pages[0].media_box".
const Json &RequireKey(const Json &obj, const std::string &key,
                       const std::string &path);
const Json &RequireObject(const Json &j, const std::string &path);
const Json &RequireArray(const Json &j, const std::string &path);
double RequireNumber(const Json &j, const std::string &path);
int64_t RequireInt(const Json &j, const std::string &path);
bool RequireBool(const Json &j, const std::string &path);
std::string RequireString(const Json &j, const std::string &path);

// Rejects keys other than those listed.
void RejectUnknownKeys(const Json &obj, std::initializer_list<std::string_view> known,
                       const std::string &path);

std::string JoinPath(const std::string &path, const std::string &key);
std::string IndexPath(const std::string &path, size_t index);

// JSON string literal for s, with quotes.
std::string JsonQuote(std::string_view s);

}  // namespace guidegraph

#endif  // GUIDEGRAPH_BASE_JSON_UTIL_H_
