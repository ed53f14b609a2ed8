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

// Page geometry extracted from a PDF: positioned text runs, stroked line
// segments, filled polygons and link annotations. All coordinates are PDF
// user-space points on the 1e-3 grid (see Quantize()).

#ifndef GUIDEGRAPH_PDF_GEOMETRY_H_
#define GUIDEGRAPH_PDF_GEOMETRY_H_

#include <string>
#include <vector>

#include "guidegraph/base/geometry.h"

namespace guidegraph::pdf {

// A run of glyphs shown by one text operator with no word gap inside.
struct GlyphRun {
  std::string text;  // UTF-8, never empty
  Point origin;      // start of the baseline
  double width = 0;  // advance along the baseline
  double font_size = 0;
  double baseline_y = 0;
  int page_index = 0;

  // Nominal glyph box: descent 0.25 em, ascent 0.95 em.
  BBox Box() const;

  bool operator==(const GlyphRun &) const = default;
};

struct Segment {
  Point p0;
  Point p1;
  double stroke_width = 1;

  double Length() const { return Distance(p0, p1); }

  bool operator==(const Segment &) const = default;
};

struct FilledPolygon {
  std::vector<Point> vertices;

  bool is_triangle() const { return vertices.size() == 3; }
  double Area() const;
  Point Centroid() const;

  bool operator==(const FilledPolygon &) const = default;
};

struct LinkAnnotation {
  BBox rect;
  int target_page = 0;

  bool operator==(const LinkAnnotation &) const = default;
};

struct PageGeometry {
  int page_index = 0;
  BBox media_box;
  std::vector<GlyphRun> glyph_runs;
  std::vector<Segment> segments;
  std::vector<FilledPolygon> polygons;
  std::vector<LinkAnnotation> links;

  bool operator==(const PageGeometry &) const = default;
};

struct DocumentGeometry {
  std::vector<PageGeometry> pages;
  std::string source_digest;

  bool operator==(const DocumentGeometry &) const = default;
};

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_GEOMETRY_H_
