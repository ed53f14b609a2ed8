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

// Geometry interchange: a JSON document
//
//   {"pages": [{"glyph_runs": [...], "links": [...], "media_box": [x0,y0,x1,y1],
//               "page_index": 0, "polygons": [...], "segments": [...]}],
//    "source_digest": "..."}
//
// with keys in sorted order and every coordinate printed with three
// decimals. Externally extracted geometry can enter the pipeline here.

#ifndef GUIDEGRAPH_PDF_GEOMETRY_IO_H_
#define GUIDEGRAPH_PDF_GEOMETRY_IO_H_

#include <string>
#include <string_view>

#include "guidegraph/pdf/geometry.h"

namespace guidegraph::pdf {

std::string ExportGeometry(const DocumentGeometry &doc);

// Throws SchemaViolation naming the offending key.
DocumentGeometry ImportGeometry(std::string_view text);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_GEOMETRY_IO_H_
