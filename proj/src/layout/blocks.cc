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
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

#include "guidegraph/base/util.h"
#include "guidegraph/layout/layout.h"

namespace guidegraph::layout {
namespace {

using pdf::Segment;

size_t FindRoot(std::vector<size_t> &parent, size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

bool SeparatorSplits(const std::vector<Segment> &seps, const TextLine &a,
                     const TextLine &b) {
  double shared0 = std::max(a.bbox.x0, b.bbox.x0);
  double shared1 = std::min(a.bbox.x1, b.bbox.x1);
  double lo = std::min(a.baseline_y, b.baseline_y);
  double hi = std::max(a.baseline_y, b.baseline_y);
  for (const Segment &s : seps) {
    double x = (s.p0.x + s.p1.x) / 2;
    double s_lo = std::min(s.p0.y, s.p1.y), s_hi = std::max(s.p0.y, s.p1.y);
    if (x > shared0 && x < shared1 && s_lo <= lo && s_hi >= hi) return true;
  }
  return false;
}

}  // namespace

std::vector<NodeBlock> FormBlocks(const std::vector<TextLine> &lines,
                                  const std::vector<Segment> &separators,
                                  const LayoutConfig &config) {
  const size_t n = lines.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);

  for (size_t i = 0; i < n; ++i) {
    const TextLine &li = lines[i];
    // (gap, below?, x0, index): smallest gap, then upward, then leftmost.
    std::optional<std::tuple<double, int, double, size_t>> best;
    for (size_t j = 0; j < n; ++j) {
      const TextLine &lj = lines[j];
      if (j == i || lj.baseline_y == li.baseline_y) continue;
      const TextLine &upper = lj.baseline_y > li.baseline_y ? lj : li;
      const TextLine &lower = lj.baseline_y > li.baseline_y ? li : lj;
      double gap = std::max(0.0, upper.bbox.y0 - lower.bbox.y1);
      double fs = std::max(li.font_size, lj.font_size);
      if (gap > config.block_max_gap * fs) continue;
      double narrower = std::min(li.bbox.width(), lj.bbox.width());
      double overlap = IntervalOverlap(li.bbox.x0, li.bbox.x1, lj.bbox.x0, lj.bbox.x1);
      if (overlap <= 0 || overlap < config.block_min_overlap * narrower) continue;
      if (SeparatorSplits(separators, li, lj)) continue;
      auto key = std::make_tuple(gap, lj.baseline_y > li.baseline_y ? 0 : 1, lj.bbox.x0, j);
      if (!best || key < *best) best = key;
    }
    if (best) {
      size_t a = FindRoot(parent, i), b = FindRoot(parent, std::get<3>(*best));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < n; ++i) groups[FindRoot(parent, i)].push_back(i);

  std::vector<NodeBlock> blocks;
  for (auto &[root, members] : groups) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      if (lines[a].baseline_y != lines[b].baseline_y) {
        return lines[a].baseline_y > lines[b].baseline_y;
      }
      return lines[a].bbox.x0 < lines[b].bbox.x0;
    });
    NodeBlock block;
    block.page_index = lines[members[0]].page_index;
    block.bbox = lines[members[0]].bbox;
    for (size_t m : members) {
      const TextLine &l = lines[m];
      block.bbox = block.bbox.Union(l.bbox);
      block.lines.push_back(l.text);
      for (const Superscript &s : l.superscripts) {
        if (std::find(block.footnote_markers.begin(), block.footnote_markers.end(),
                      s.marker) == block.footnote_markers.end()) {
          block.footnote_markers.push_back(s.marker);
        }
      }
    }
    blocks.push_back(std::move(block));
  }
  AssignNodeIds(blocks);
  return blocks;
}

void AssignNodeIds(std::vector<NodeBlock> &blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const NodeBlock &a, const NodeBlock &b) {
    if (a.page_index != b.page_index) return a.page_index < b.page_index;
    if (a.bbox.y1 != b.bbox.y1) return a.bbox.y1 > b.bbox.y1;
    if (a.bbox.x0 != b.bbox.x0) return a.bbox.x0 < b.bbox.x0;
    return a.lines < b.lines;
  });
  std::map<int, int> next;
  for (NodeBlock &b : blocks) {
    b.id = "p" + std::to_string(b.page_index) + "-n" + std::to_string(next[b.page_index]++);
  }
}

LabelResult DetectLabels(const pdf::PageGeometry &page, const std::vector<NodeBlock> &blocks,
                         const LayoutConfig &config) {
  std::vector<Segment> rules;
  for (const Segment &s : page.segments) {
    if (std::abs(s.p1.y - s.p0.y) <= config.separator_max_dx) rules.push_back(s);
  }

  LabelResult result;
  for (const NodeBlock &block : blocks) {
    const Segment *underline = nullptr;
    double best_gap = 0;
    for (const Segment &s : rules) {
      double y = (s.p0.y + s.p1.y) / 2;
      double gap = block.bbox.y0 - y;
      if (gap < 0 || gap > config.label_max_gap) continue;
      double sx0 = std::min(s.p0.x, s.p1.x), sx1 = std::max(s.p0.x, s.p1.x);
      double covered = IntervalOverlap(block.bbox.x0, block.bbox.x1, sx0, sx1);
      if (covered < config.label_min_span * block.bbox.width()) continue;
      if (underline == nullptr || gap < best_gap) {
        underline = &s;
        best_gap = gap;
      }
    }
    if (underline == nullptr) {
      result.nodes.push_back(block);
      continue;
    }
    LabelBlock label;
    label.text = Join(block.lines, " ");
    label.bbox = block.bbox;
    label.page_index = block.page_index;
    label.x0 = std::min({block.bbox.x0, underline->p0.x, underline->p1.x});
    label.x1 = std::max({block.bbox.x1, underline->p0.x, underline->p1.x});
    result.labels.push_back(std::move(label));
  }

  for (NodeBlock &node : result.nodes) {
    const LabelBlock *chosen = nullptr;
    for (const LabelBlock &label : result.labels) {
      if (label.bbox.center().y <= node.bbox.y1) continue;
      double overlap = IntervalOverlap(label.x0, label.x1, node.bbox.x0, node.bbox.x1);
      if (overlap <= 0 || overlap < config.label_min_overlap * node.bbox.width()) continue;
      if (chosen == nullptr || label.bbox.center().y < chosen->bbox.center().y ||
          (label.bbox.center().y == chosen->bbox.center().y && label.x0 < chosen->x0)) {
        chosen = &label;
      }
    }
    node.label = chosen ? std::optional<std::string>(chosen->text) : std::nullopt;
  }
  AssignNodeIds(result.nodes);
  return result;
}

FootnoteResult DetectFootnotes(const pdf::PageGeometry &page,
                               const std::vector<TextLine> &lines,
                               const LayoutConfig &config, bool strict) {
  FootnoteResult result;
  const double modal = ModalFontSize(lines);
  const double band_top =
      page.media_box.y0 + config.footnote_band * page.media_box.height();
  Footnote *current = nullptr;
  for (const TextLine &line : lines) {
    bool small_bottom = line.baseline_y <= band_top &&
                        line.font_size <= config.footnote_max_size * modal;
    if (!small_bottom) {
      result.remaining.push_back(line);
      continue;
    }
    const std::string &t = line.text;
    if (t.size() >= 3 && t[0] >= 'a' && t[0] <= 'z' && t[1] == ' ') {
      char marker = t[0];
      bool seen = false;
      for (const Footnote &f : result.footnotes) seen |= f.marker == marker;
      if (seen) {
        if (strict) throw DuplicateMarker(page.page_index, marker);
        result.duplicates.push_back(marker);
        current = nullptr;
        continue;
      }
      result.footnotes.push_back(
          Footnote{marker, std::string(Trim(t.substr(2))), page.page_index});
      current = &result.footnotes.back();
    } else if (current != nullptr) {
      current->text += " " + t;
    } else if (!result.duplicates.empty()) {
      // Continuation of a rejected duplicate.
    } else {
      result.remaining.push_back(line);
    }
  }
  return result;
}

}  // namespace guidegraph::layout
