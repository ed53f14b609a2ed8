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

#ifndef GUIDEGRAPH_BASE_ERROR_H_
#define GUIDEGRAPH_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace guidegraph {

// Coarse error classes. Every error raised by the library belongs to exactly
// one category; the command-line front end maps categories to exit codes.
enum class ErrorCategory {
  kInput,        // malformed or missing input, schema violations
  kUnsupported,  // well-formed input using a feature outside the subset
  kInternal,     // invariant broken inside the library
};

// Base class of all library errors. `kind` is a stable machine-readable name
// such as "MalformedHeader" or "SchemaViolation".
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string &message)
      : std::runtime_error(kind + ": " + message),
        category_(category),
        kind_(std::move(kind)) {}

  ErrorCategory category() const { return category_; }
  const std::string &kind() const { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

// Raised when an input document does not match its schema. `path` names the
// offending key, e.g. "pages[0].media_box".
class SchemaViolation : public Error {
 public:
  SchemaViolation(const std::string &path, const std::string &detail = "")
      : Error(ErrorCategory::kInput, "SchemaViolation",
              detail.empty() ? path : path + ": " + detail),
        path_(path) {}

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

// Raised for unreadable files and similar I/O problems.
class IoError : public Error {
 public:
  explicit IoError(const std::string &message)
      : Error(ErrorCategory::kInput, "IoError", message) {}
};

}  // namespace guidegraph

#endif  // GUIDEGRAPH_BASE_ERROR_H_
