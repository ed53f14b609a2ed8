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

#include "guidegraph/pdf/geometry.h"

#include <cmath>

namespace guidegraph::pdf {

BBox GlyphRun::Box() const {
  return {origin.x, baseline_y - 0.25 * font_size, origin.x + width,
          baseline_y + 0.95 * font_size};
}

double FilledPolygon::Area() const {
  double sum = 0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Point &p = vertices[i];
    const Point &q = vertices[(i + 1) % vertices.size()];
    sum += p.x * q.y - q.x * p.y;
  }
  return std::abs(sum) / 2;
}

Point FilledPolygon::Centroid() const {
  double a = 0, cx = 0, cy = 0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Point &p = vertices[i];
    const Point &q = vertices[(i + 1) % vertices.size()];
    double cross = p.x * q.y - q.x * p.y;
    a += cross;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  if (std::abs(a) < 1e-12) {
    Point mean;
    for (const Point &p : vertices) {
      mean.x += p.x / vertices.size();
      mean.y += p.y / vertices.size();
    }
    return mean;
  }
  return {cx / (3 * a), cy / (3 * a)};
}

}  // namespace guidegraph::pdf
