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

#ifndef GUIDEGRAPH_PDF_ERRORS_H_
#define GUIDEGRAPH_PDF_ERRORS_H_

#include <cstdint>
#include <string>

#include "guidegraph/base/error.h"

namespace guidegraph::pdf {

// Errors raised while reading PDF bytes. offset() is the byte offset in the
// file where the problem was found, or -1 when unknown.
class PdfError : public Error {
 public:
  PdfError(ErrorCategory category, const std::string &kind,
           const std::string &message, int64_t offset)
      : Error(category, kind,
              offset >= 0 ? message + " (at byte " + std::to_string(offset) +
                                ")"
                          : message),
        offset_(offset) {}

  int64_t offset() const { return offset_; }

 private:
  int64_t offset_;
};

class MalformedHeader : public PdfError {
 public:
  explicit MalformedHeader(const std::string &message)
      : PdfError(ErrorCategory::kInput, "MalformedHeader", message, 0) {}
};

class BrokenXref : public PdfError {
 public:
  BrokenXref(const std::string &message, int64_t offset)
      : PdfError(ErrorCategory::kInput, "BrokenXref", message, offset) {}
};

// Syntax error inside an object or content stream.
class MalformedObject : public PdfError {
 public:
  MalformedObject(const std::string &message, int64_t offset)
      : PdfError(ErrorCategory::kInput, "MalformedObject", message, offset) {}
};

class UnsupportedFilter : public PdfError {
 public:
  UnsupportedFilter(const std::string &filter, int64_t offset)
      : PdfError(ErrorCategory::kUnsupported, "UnsupportedFilter",
                 "filter /" + filter + " is not supported", offset),
        filter_(filter) {}

  const std::string &filter() const { return filter_; }

 private:
  std::string filter_;
};

class UnsupportedFont : public PdfError {
 public:
  UnsupportedFont(const std::string &font, int64_t offset)
      : PdfError(ErrorCategory::kUnsupported, "UnsupportedFont",
                 "font " + font + " is not one of the standard 14", offset),
        font_(font) {}

  const std::string &font() const { return font_; }

 private:
  std::string font_;
};

// Encryption, cross-reference streams and other features outside the subset.
class UnsupportedFeature : public PdfError {
 public:
  UnsupportedFeature(const std::string &feature, int64_t offset)
      : PdfError(ErrorCategory::kUnsupported, "UnsupportedFeature",
                 feature + " is not supported", offset) {}
};

class UnbalancedStateStack : public PdfError {
 public:
  explicit UnbalancedStateStack(int64_t offset)
      : PdfError(ErrorCategory::kInput, "UnbalancedStateStack",
                 "Q without matching q", offset) {}
};

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_ERRORS_H_
