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

// Plane primitives in PDF user space: points, y grows upward.

#ifndef GUIDEGRAPH_BASE_GEOMETRY_H_
#define GUIDEGRAPH_BASE_GEOMETRY_H_

#include <algorithm>
#include <cmath>

namespace guidegraph {

struct Point {
  double x = 0;
  double y = 0;

  bool operator==(const Point &) const = default;
};

inline double Distance(const Point &a, const Point &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned box with x0 <= x1 and y0 <= y1.
struct BBox {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  Point center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }

  bool Contains(const Point &p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }

  BBox Expanded(double margin) const {
    return {x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }

  BBox Union(const BBox &o) const {
    return {std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1),
            std::max(y1, o.y1)};
  }

  bool operator==(const BBox &) const = default;
};

// Length of the overlap of [a0,a1] and [b0,b1]; zero when disjoint.
inline double IntervalOverlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

inline double IntersectionArea(const BBox &a, const BBox &b) {
  return IntervalOverlap(a.x0, a.x1, b.x0, b.x1) *
         IntervalOverlap(a.y0, a.y1, b.y0, b.y1);
}

inline double IoU(const BBox &a, const BBox &b) {
  double inter = IntersectionArea(a, b);
  double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

}  // namespace guidegraph

#endif  // GUIDEGRAPH_BASE_GEOMETRY_H_
