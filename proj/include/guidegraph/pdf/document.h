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

// Reader for a PDF 1.x subset: classic cross-reference tables (with /Prev
// chains), uncompressed or FlateDecode streams, the standard 14 fonts and
// intra-document link annotations. Anything outside the subset raises a
// named error instead of being skipped.

#ifndef GUIDEGRAPH_PDF_DOCUMENT_H_
#define GUIDEGRAPH_PDF_DOCUMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/pdf/content_stream.h"
#include "guidegraph/pdf/geometry.h"

namespace guidegraph::pdf {

struct ParseOptions {
  InterpreterOptions interpreter;
  // Pages are interpreted on up to this many threads.
  int jobs = 1;
};

struct ParseReport {
  std::vector<ContentStats> page_stats;
  std::vector<std::string> warnings;
};

DocumentGeometry ParseDocument(std::string_view bytes,
                               const ParseOptions &options = {},
                               ParseReport *report = nullptr);

// Inflates zlib data. Throws MalformedObject on corrupt input.
std::string FlateDecode(std::string_view data, int64_t offset = -1);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_DOCUMENT_H_
