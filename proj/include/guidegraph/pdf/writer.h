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

// Minimal PDF writer producing files inside the reader's subset: a classic
// cross-reference table, optional FlateDecode content streams, standard
// fonts shared through the page tree and /Link annotations with explicit
// page destinations.

#ifndef GUIDEGRAPH_PDF_WRITER_H_
#define GUIDEGRAPH_PDF_WRITER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/pdf/geometry.h"

namespace guidegraph::pdf {

struct PdfPageSpec {
  BBox media_box{0, 0, 612, 792};
  std::string content;  // unencoded content stream
  std::vector<LinkAnnotation> links;
};

struct PdfWriterOptions {
  bool compress = true;
  // Resource name to standard font name, e.g. {"F1", "Helvetica"}.
  std::map<std::string, std::string> fonts = {{"F1", "Helvetica"}};
};

std::string WritePdf(const std::vector<PdfPageSpec> &pages,
                     const PdfWriterOptions &options = {});

std::string FlateEncode(std::string_view data);

// Escapes text for use inside a (...) string literal.
std::string EscapePdfString(std::string_view text);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_WRITER_H_
