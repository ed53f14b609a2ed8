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

#include "guidegraph/base/json_util.h"

#include <algorithm>

#include "guidegraph/base/error.h"

namespace guidegraph {

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error &e) {
    throw SchemaViolation("$", std::string("not valid JSON: ") + e.what());
  }
}

std::string JoinPath(const std::string &path, const std::string &key) {
  return path.empty() || path == "$" ? key : path + "." + key;
}

std::string IndexPath(const std::string &path, size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json &RequireKey(const Json &obj, const std::string &key,
                       const std::string &path) {
  RequireObject(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaViolation(JoinPath(path, key), "missing");
  return *it;
}

const Json &RequireObject(const Json &j, const std::string &path) {
  if (!j.is_object()) throw SchemaViolation(path, "expected an object");
  return j;
}

const Json &RequireArray(const Json &j, const std::string &path) {
  if (!j.is_array()) throw SchemaViolation(path, "expected an array");
  return j;
}

double RequireNumber(const Json &j, const std::string &path) {
  if (!j.is_number()) throw SchemaViolation(path, "expected a number");
  return j.get<double>();
}

int64_t RequireInt(const Json &j, const std::string &path) {
  if (j.is_number_integer()) return j.get<int64_t>();
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (v == static_cast<double>(static_cast<int64_t>(v))) {
      return static_cast<int64_t>(v);
    }
  }
  throw SchemaViolation(path, "expected an integer");
}

bool RequireBool(const Json &j, const std::string &path) {
  if (!j.is_boolean()) throw SchemaViolation(path, "expected a boolean");
  return j.get<bool>();
}

std::string RequireString(const Json &j, const std::string &path) {
  if (!j.is_string()) throw SchemaViolation(path, "expected a string");
  return j.get<std::string>();
}

void RejectUnknownKeys(const Json &obj, std::initializer_list<std::string_view> known,
                       const std::string &path) {
  RequireObject(obj, path);
  for (const auto &item : obj.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw SchemaViolation(JoinPath(path, item.key()), "unknown key");
    }
  }
}

std::string JsonQuote(std::string_view s) {
  return Json(std::string(s)).dump(-1, ' ', false, Json::error_handler_t::replace);
}

}  // namespace guidegraph
