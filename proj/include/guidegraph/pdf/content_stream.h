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

// Interpreter for the subset of content-stream operators that carry text
// placement and vector line art.
//
// Recognized: q Q cm w; BT ET Tf Td TD Tm T* TL Tc Tw Tz Ts Tr Tj TJ ' ";
// m l c v y h re; S s f F f* B B* b b* n W W*. Color, dash, marked-content
// and similar state operators are accepted and ignored. Everything else is
// skipped and tallied in ContentStats.

#ifndef GUIDEGRAPH_PDF_CONTENT_STREAM_H_
#define GUIDEGRAPH_PDF_CONTENT_STREAM_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "guidegraph/base/geometry.h"
#include "guidegraph/pdf/geometry.h"
#include "guidegraph/pdf/standard_fonts.h"

namespace guidegraph::pdf {

struct FontResource {
  std::string base_font;
  const FontMetrics *metrics = nullptr;  // nullptr: not a standard font
  int64_t offset = -1;                   // of the font object, if known
};

// Resource name (without the slash) to font.
using FontMap = std::map<std::string, FontResource>;

struct ContentStats {
  int skipped_operators = 0;  // unrecognized keywords
  int malformed_operations = 0;  // recognized keyword, bad operands
  std::map<std::string, int> skipped_by_name;
};

struct InterpreterOptions {
  // A horizontal gap wider than this many font sizes splits a glyph run.
  double word_gap_ratio = 0.35;
  // Chords per flattened Bezier curve.
  int curve_chords = 8;
};

// Throws UnsupportedFont when Tf selects a non-standard or missing font and
// UnbalancedStateStack on a Q without matching q.
PageGeometry InterpretContentStream(std::string_view stream,
                                    const FontMap &fonts,
                                    const BBox &media_box, int page_index,
                                    ContentStats *stats = nullptr,
                                    const InterpreterOptions &options = {});

// Font map with the standard fonts under the given resource names; handy for
// tests and for callers that build content streams by hand.
FontMap StandardFontMap(const std::map<std::string, std::string> &names);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_CONTENT_STREAM_H_
