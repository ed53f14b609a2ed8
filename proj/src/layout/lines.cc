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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "guidegraph/layout/layout.h"

namespace guidegraph::layout {
namespace {

using pdf::GlyphRun;
using pdf::Segment;

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t Find(size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

// Text line under construction, remembering where each run starts so that
// superscripts can be anchored.
struct LineDraft {
  TextLine line;
  std::vector<std::pair<double, int>> run_ends;  // (run x0, text offset after run)
  bool absorbed = false;
};

bool SeparatorBetween(const std::vector<Segment> &seps, double left_x1, double right_x0,
                      double y_lo, double y_hi) {
  for (const Segment &s : seps) {
    double x = (s.p0.x + s.p1.x) / 2;
    double s_lo = std::min(s.p0.y, s.p1.y), s_hi = std::max(s.p0.y, s.p1.y);
    if (x > left_x1 && x < right_x0 && s_lo <= y_lo && s_hi >= y_hi) return true;
  }
  return false;
}

bool IsMarkerText(const std::string &text) {
  bool any = false;
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      any = true;
    } else if (c != ',' && c != ' ') {
      return false;
    }
  }
  return any;
}

}  // namespace

std::vector<Segment> DetectSeparators(const pdf::PageGeometry &page,
                                      const LayoutConfig &config) {
  std::vector<Segment> out;
  for (const Segment &s : page.segments) {
    if (std::abs(s.p1.x - s.p0.x) <= config.separator_max_dx &&
        s.Length() >= config.separator_min_length) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<TextLine> GroupLines(const pdf::PageGeometry &page, const LayoutConfig &config) {
  const std::vector<GlyphRun> &runs = page.glyph_runs;
  std::vector<size_t> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const GlyphRun &ra = runs[a], &rb = runs[b];
    if (ra.baseline_y != rb.baseline_y) return ra.baseline_y > rb.baseline_y;
    if (ra.origin.x != rb.origin.x) return ra.origin.x < rb.origin.x;
    if (ra.text != rb.text) return ra.text < rb.text;
    return a < b;
  });
  double max_size = 0;
  for (const GlyphRun &r : runs) max_size = std::max(max_size, r.font_size);
  const std::vector<Segment> seps = DetectSeparators(page, config);

  DisjointSets sets(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const GlyphRun &a = runs[order[i]];
    for (size_t j = i + 1; j < order.size(); ++j) {
      const GlyphRun &b = runs[order[j]];
      if (a.baseline_y - b.baseline_y > config.line_baseline_tolerance * max_size) break;
      double fs = std::max(a.font_size, b.font_size);
      if (std::abs(a.baseline_y - b.baseline_y) > config.line_baseline_tolerance * fs) {
        continue;
      }
      const GlyphRun &left = a.origin.x <= b.origin.x ? a : b;
      const GlyphRun &right = a.origin.x <= b.origin.x ? b : a;
      double left_x1 = left.origin.x + left.width;
      double gap = right.origin.x - left_x1;
      if (gap > config.line_join_gap * fs) continue;
      if (gap > 0 && SeparatorBetween(seps, left_x1, right.origin.x,
                                       std::min(a.baseline_y, b.baseline_y),
                                       std::max(a.baseline_y, b.baseline_y))) {
        continue;
      }
      sets.Union(i, j);
    }
  }

  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < order.size(); ++i) groups[sets.Find(i)].push_back(order[i]);

  std::vector<LineDraft> drafts;
  for (auto &[root, members] : groups) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      if (runs[a].origin.x != runs[b].origin.x) return runs[a].origin.x < runs[b].origin.x;
      return a < b;
    });
    LineDraft d;
    TextLine &line = d.line;
    line.page_index = page.page_index;
    const GlyphRun *prev = nullptr;
    const GlyphRun *largest = nullptr;
    for (size_t idx : members) {
      const GlyphRun &r = runs[idx];
      if (prev == nullptr) {
        line.bbox = r.Box();
      } else {
        line.bbox = line.bbox.Union(r.Box());
        double fs = std::max(prev->font_size, r.font_size);
        if (r.origin.x - (prev->origin.x + prev->width) >= config.space_gap * fs) {
          line.text += ' ';
        }
      }
      line.text += r.text;
      d.run_ends.emplace_back(r.origin.x, static_cast<int>(line.text.size()));
      if (largest == nullptr || r.font_size > largest->font_size) largest = &r;
      prev = &r;
    }
    line.font_size = largest->font_size;
    line.baseline_y = largest->baseline_y;
    drafts.push_back(std::move(d));
  }

  // Attach raised small lines to the host line below them.
  for (LineDraft &s : drafts) {
    if (!IsMarkerText(s.line.text)) continue;
    LineDraft *host = nullptr;
    double best_rise = 0, best_dx = 0;
    for (LineDraft &h : drafts) {
      if (&h == &s || h.absorbed) continue;
      const TextLine &hl = h.line;
      double rise = s.line.baseline_y - hl.baseline_y;
      if (rise < config.superscript_min_rise * hl.font_size ||
          rise > config.superscript_max_rise * hl.font_size) {
        continue;
      }
      if (s.line.font_size > config.superscript_max_size * hl.font_size) continue;
      double x = s.line.bbox.x0;
      if (x < hl.bbox.x0 - 0.5 * hl.font_size || x > hl.bbox.x1 + 0.5 * hl.font_size) {
        continue;
      }
      double dx = std::max(0.0, x - hl.bbox.x1);
      if (host == nullptr || rise < best_rise || (rise == best_rise && dx < best_dx)) {
        host = &h;
        best_rise = rise;
        best_dx = dx;
      }
    }
    if (host == nullptr) continue;
    int anchor = 0;
    for (const auto &[x0, end] : host->run_ends) {
      if (x0 < s.line.bbox.x0) anchor = end;
    }
    for (char c : s.line.text) {
      if (c >= 'a' && c <= 'z') host->line.superscripts.push_back({c, anchor});
    }
    s.absorbed = true;
  }

  std::vector<TextLine> lines;
  for (LineDraft &d : drafts) {
    if (!d.absorbed) lines.push_back(std::move(d.line));
  }
  for (TextLine &l : lines) {
    std::stable_sort(l.superscripts.begin(), l.superscripts.end(),
                     [](const Superscript &a, const Superscript &b) {
                       return a.anchor_offset < b.anchor_offset;
                     });
  }
  std::sort(lines.begin(), lines.end(), [](const TextLine &a, const TextLine &b) {
    if (a.baseline_y != b.baseline_y) return a.baseline_y > b.baseline_y;
    if (a.bbox.x0 != b.bbox.x0) return a.bbox.x0 < b.bbox.x0;
    return a.text < b.text;
  });
  return lines;
}

double ModalFontSize(const std::vector<TextLine> &lines) {
  std::map<double, size_t> weight;
  for (const TextLine &l : lines) weight[l.font_size] += l.text.size();
  double best = 0;
  size_t best_w = 0;
  for (const auto &[size, w] : weight) {
    if (w >= best_w) {
      best = size;
      best_w = w;
    }
  }
  return best;
}

}  // namespace guidegraph::layout
