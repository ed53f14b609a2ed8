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

#include "guidegraph/graph/builder.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <deque>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "guidegraph/base/util.h"

namespace guidegraph::graph {
namespace {

using pdf::FilledPolygon;
using pdf::Segment;

std::string PointText(const Point &p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.3f, %.3f)", p.x, p.y);
  return buf;
}

void Warn(std::vector<Warning> *warnings, int page, std::string kind, std::string detail) {
  if (warnings) warnings->push_back({page, std::move(kind), std::move(detail)});
}

struct Polyline {
  std::vector<Point> points;
};

// Chains segments whose endpoints coincide (within tolerance) at vertices
// of degree two. Closed loops are dropped.
std::vector<Polyline> ChainSegments(const std::vector<Segment> &segs, double tol) {
  const size_t n = segs.size();
  std::vector<Point> ends(2 * n);
  for (size_t i = 0; i < n; ++i) {
    ends[2 * i] = segs[i].p0;
    ends[2 * i + 1] = segs[i].p1;
  }
  std::vector<size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<size_t> by_x(2 * n);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](size_t a, size_t b) {
    return ends[a].x != ends[b].x ? ends[a].x < ends[b].x : a < b;
  });
  for (size_t a = 0; a < by_x.size(); ++a) {
    for (size_t b = a + 1; b < by_x.size(); ++b) {
      const Point &pa = ends[by_x[a]], &pb = ends[by_x[b]];
      if (pb.x - pa.x > tol) break;
      if (Distance(pa, pb) <= tol) {
        size_t ra = find(by_x[a]), rb = find(by_x[b]);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::map<size_t, std::vector<size_t>> incident;  // vertex -> segments
  std::vector<bool> skip(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (find(2 * i) == find(2 * i + 1)) {
      skip[i] = true;  // shorter than the tolerance
      continue;
    }
    incident[find(2 * i)].push_back(i);
    incident[find(2 * i + 1)].push_back(i);
  }

  std::vector<bool> used(n, false);
  std::vector<Polyline> out;
  for (size_t s = 0; s < n; ++s) {
    if (used[s] || skip[s]) continue;
    used[s] = true;
    std::deque<Point> pts = {segs[s].p0, segs[s].p1};
    size_t head_v = find(2 * s), tail_v = find(2 * s + 1);
    bool closed = false;
    // Extend from one end: `v` is the current end vertex, `cur` the segment
    // that reached it. Returns the new end vertex.
    auto extend = [&](size_t v, size_t cur, bool at_back) {
      while (true) {
        const std::vector<size_t> &inc = incident[v];
        if (inc.size() != 2) return v;
        size_t next = inc[0] == cur ? inc[1] : inc[0];
        if (used[next]) {
          if (next == s || next == cur) closed = true;
          return v;
        }
        used[next] = true;
        bool p0_here = find(2 * next) == v;
        Point far = p0_here ? segs[next].p1 : segs[next].p0;
        if (at_back) {
          pts.push_back(far);
        } else {
          pts.push_front(far);
        }
        v = find(p0_here ? 2 * next + 1 : 2 * next);
        cur = next;
      }
    };
    tail_v = extend(tail_v, s, true);
    head_v = extend(head_v, s, false);
    if (closed || (head_v == tail_v && incident[head_v].size() == 2)) continue;
    out.push_back(Polyline{{pts.begin(), pts.end()}});
  }
  return out;
}

}  // namespace

std::vector<Arrow> DetectArrows(const pdf::PageGeometry &page, const GraphConfig &config,
                                std::vector<Warning> *warnings) {
  std::vector<Point> heads;
  for (const FilledPolygon &poly : page.polygons) {
    if (poly.is_triangle() && poly.Area() <= config.arrowhead_max_area) {
      heads.push_back(poly.Centroid());
    }
  }
  std::vector<Polyline> lines = ChainSegments(page.segments, config.chain_tolerance);

  // has_head[i][0] for the first point of polyline i, [1] for the last.
  std::vector<std::array<bool, 2>> has_head(lines.size(), {false, false});
  for (const Point &h : heads) {
    double best = config.head_tolerance;
    int best_line = -1, best_end = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
      for (int end : {1, 0}) {
        const Point &p = end ? lines[i].points.back() : lines[i].points.front();
        double d = Distance(p, h);
        if (d < best || (d == best && best_line < 0)) {
          best = d;
          best_line = static_cast<int>(i);
          best_end = end;
        }
      }
    }
    if (best_line < 0) {
      Warn(warnings, page.page_index, "unattached_arrowhead",
           "arrowhead at " + PointText(h) + " has no line within tolerance");
      continue;
    }
    has_head[best_line][best_end] = true;
  }

  std::vector<Arrow> arrows;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::vector<Point> &pts = lines[i].points;
    if (has_head[i][1]) arrows.push_back({pts, pts.front(), pts.back(), page.page_index});
    if (has_head[i][0]) {
      std::vector<Point> rev(pts.rbegin(), pts.rend());
      arrows.push_back({rev, rev.front(), rev.back(), page.page_index});
    }
  }
  return arrows;
}

namespace {

const NodeBlock *ResolvePoint(const Point &p, const std::vector<NodeBlock> &blocks,
                              double expand) {
  const NodeBlock *best = nullptr;
  double best_d = 0;
  for (const NodeBlock &b : blocks) {
    if (!b.bbox.Expanded(expand).Contains(p)) continue;
    double d = Distance(p, b.bbox.center());
    if (best == nullptr || d < best_d) {
      best = &b;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

std::vector<Edge> LinkBlocks(const std::vector<Arrow> &arrows,
                             const std::vector<NodeBlock> &blocks, const GraphConfig &config,
                             std::vector<Warning> *warnings) {
  std::vector<Edge> edges;
  for (const Arrow &a : arrows) {
    const NodeBlock *from = ResolvePoint(a.source_pt, blocks, config.block_expand);
    const NodeBlock *to = ResolvePoint(a.target_pt, blocks, config.block_expand);
    std::string where = PointText(a.source_pt) + " -> " + PointText(a.target_pt);
    if (from == nullptr) {
      Warn(warnings, a.page_index, "unresolved_arrow_source",
           "arrow " + where + " starts near no block");
    }
    if (to == nullptr) {
      Warn(warnings, a.page_index, "unresolved_arrow_target",
           "arrow " + where + " ends near no block");
    }
    if (from == nullptr || to == nullptr) continue;
    if (from == to) {
      Warn(warnings, a.page_index, "self_loop_arrow",
           "arrow " + where + " starts and ends at " + from->id);
      continue;
    }
    Edge e{from->id, to->id, EdgeKind::kIntraPage};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  return edges;
}

std::vector<Edge> StitchCrossPage(const std::vector<std::vector<NodeBlock>> &blocks,
                                  const std::vector<Edge> &intra_edges,
                                  const std::vector<std::vector<pdf::LinkAnnotation>> &links,
                                  const GraphConfig &config, std::vector<Warning> *warnings) {
  std::set<std::string> has_out, has_in;
  for (const Edge &e : intra_edges) {
    if (e.kind != EdgeKind::kIntraPage) continue;
    has_out.insert(e.from_id);
    has_in.insert(e.to_id);
  }
  std::vector<Edge> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t p = 0; p < links.size(); ++p) {
    for (const pdf::LinkAnnotation &link : links[p]) {
      const int q = link.target_page;
      if (q < 0 || q >= static_cast<int>(blocks.size())) {
        Warn(warnings, static_cast<int>(p), "link_target_out_of_range",
             "link to page " + std::to_string(q));
        continue;
      }
      if (q == static_cast<int>(p)) {
        Warn(warnings, static_cast<int>(p), "self_page_link", "link targets its own page");
        continue;
      }
      std::vector<const NodeBlock *> lasts, firsts;
      const NodeBlock *covered = nullptr;
      double covered_area = 0;
      double rect_area = link.rect.area();
      if (p < blocks.size() && rect_area > 0) {
        for (const NodeBlock &b : blocks[p]) {
          double a = IntersectionArea(link.rect, b.bbox);
          if (a >= config.link_node_overlap * rect_area && a > covered_area) {
            covered = &b;
            covered_area = a;
          }
        }
      }
      if (covered != nullptr) {
        lasts.push_back(covered);
      } else if (p < blocks.size()) {
        for (const NodeBlock &b : blocks[p]) {
          if (!has_out.count(b.id)) lasts.push_back(&b);
        }
      }
      for (const NodeBlock &b : blocks[q]) {
        if (!has_in.count(b.id)) firsts.push_back(&b);
      }
      if (lasts.empty()) {
        Warn(warnings, static_cast<int>(p), "link_without_sinks",
             "link to page " + std::to_string(q) + " but the page has no sink nodes");
        continue;
      }
      if (firsts.empty()) {
        Warn(warnings, static_cast<int>(p), "link_without_sources",
             "page " + std::to_string(q) + " has no source nodes");
        continue;
      }
      for (const NodeBlock *a : lasts) {
        for (const NodeBlock *b : firsts) {
          if (seen.emplace(a->id, b->id).second) {
            out.push_back({a->id, b->id, EdgeKind::kCrossPage});
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct PageResult {
  std::vector<NodeBlock> nodes;
  std::vector<Footnote> footnotes;
  std::vector<Edge> edges;
  std::vector<Warning> warnings;
};

PageResult BuildPage(const pdf::PageGeometry &page, const PipelineConfig &config) {
  PageResult r;
  std::vector<layout::TextLine> lines = layout::GroupLines(page, config.layout);
  std::vector<Segment> seps = layout::DetectSeparators(page, config.layout);
  layout::FootnoteResult notes = layout::DetectFootnotes(page, lines, config.layout, false);
  for (char m : notes.duplicates) {
    Warn(&r.warnings, page.page_index, "duplicate_footnote_marker",
         std::string("marker '") + m + "' repeated; first footnote kept");
  }
  std::vector<NodeBlock> blocks = layout::FormBlocks(notes.remaining, seps, config.layout);
  layout::LabelResult labeled = layout::DetectLabels(page, blocks, config.layout);
  r.nodes = std::move(labeled.nodes);
  r.footnotes = std::move(notes.footnotes);
  for (const NodeBlock &n : r.nodes) {
    for (char m : n.footnote_markers) {
      bool found = false;
      for (const Footnote &f : r.footnotes) found |= f.marker == m;
      if (!found) {
        Warn(&r.warnings, page.page_index, "unresolved_footnote_marker",
             n.id + " references footnote '" + std::string(1, m) +
                 "' which is not on the page");
      }
    }
  }
  std::vector<Arrow> arrows = DetectArrows(page, config.graph, &r.warnings);
  r.edges = LinkBlocks(arrows, r.nodes, config.graph, &r.warnings);
  return r;
}

}  // namespace

GuidelineGraph BuildGraph(const pdf::DocumentGeometry &doc, const PipelineConfig &config) {
  const size_t n = doc.pages.size();
  std::vector<PageResult> pages(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](size_t i) {
    try {
      pages[i] = BuildPage(doc.pages[i], config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const size_t workers = std::min(n, static_cast<size_t>(std::max(1, config.jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::thread> threads;
    for (size_t t = 0; t < workers; ++t) {
      threads.emplace_back([&, t] {
        for (size_t i = t; i < n; i += workers) work(i);
      });
    }
    for (std::thread &th : threads) th.join();
  }
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }

  GuidelineGraph g;
  std::vector<std::vector<NodeBlock>> blocks(n);
  std::vector<std::vector<pdf::LinkAnnotation>> links(n);
  for (size_t i = 0; i < n; ++i) {
    PageResult &r = pages[i];
    blocks[i] = r.nodes;
    links[i] = doc.pages[i].links;
    g.nodes.insert(g.nodes.end(), r.nodes.begin(), r.nodes.end());
    g.footnotes.insert(g.footnotes.end(), r.footnotes.begin(), r.footnotes.end());
    g.edges.insert(g.edges.end(), r.edges.begin(), r.edges.end());
    g.warnings.insert(g.warnings.end(), r.warnings.begin(), r.warnings.end());
  }
  std::vector<Edge> cross = StitchCrossPage(blocks, g.edges, links, config.graph, &g.warnings);
  g.edges.insert(g.edges.end(), cross.begin(), cross.end());
  Canonicalize(g);
  CheckInvariants(g);
  return g;
}

}  // namespace guidegraph::graph
