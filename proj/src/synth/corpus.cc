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

#include "guidegraph/synth/corpus.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "guidegraph/base/rng.h"
#include "guidegraph/base/util.h"
#include "guidegraph/layout/layout.h"
#include "guidegraph/pdf/geometry.h"
#include "guidegraph/pdf/standard_fonts.h"
#include "guidegraph/pdf/writer.h"

namespace guidegraph::synth {
namespace {

using graph::Edge;
using graph::EdgeKind;
using graph::GuidelineGraph;
using graph::NodeClass;
using layout::Footnote;
using layout::NodeBlock;

constexpr double kMarginX = 36;
constexpr double kGutter = 50;  // right of each column's text
constexpr double kNodeSize = 10, kNodeLeading = 12;
constexpr double kLabelSize = 8, kLabelLeading = 9;
constexpr double kLabelBaseline = 550;  // last label line
constexpr double kFirstNodeBaseline = 528;
constexpr double kFootSize = 7, kFootLeading = 8.5, kFootBaseline = 84;
constexpr double kSupSize = 6, kSupRise = 3.5;
constexpr double kStub = 2.5;  // gap between arrow ends and boxes
constexpr int kMaxNodeLines = 3, kMaxLabelLines = 2, kMaxFootLines = 8, kMaxMarkers = 6;
constexpr double kSeeNodeProbability = 0.5;
const BBox kCornerLinkRect{700, 575, 750, 587};

const pdf::FontMetrics &Font(const char *name) {
  const pdf::FontMetrics *f = pdf::FindStandardFont(name);
  if (f == nullptr) throw Error(ErrorCategory::kInternal, "MissingFont", name);
  return *f;
}
const pdf::FontMetrics &Regular() { return Font("Helvetica"); }
const pdf::FontMetrics &Bold() { return Font("Helvetica-Bold"); }

std::vector<std::string> Wrap(const std::string &text, const pdf::FontMetrics &font,
                              double size, double width) {
  std::vector<std::string> lines;
  for (const std::string &word : Split(text, ' ')) {
    if (word.empty()) continue;
    if (!lines.empty() && font.TextWidth(lines.back() + " " + word, size) <= width) {
      lines.back() += " " + word;
    } else {
      lines.push_back(word);
    }
  }
  return lines;
}

// Box of a line exactly as the interpreter will report it: one run per
// word, origins and widths on the 1e-3 grid.
BBox LineBox(const std::string &line, const pdf::FontMetrics &font, double size, double x,
             double baseline) {
  std::optional<BBox> box;
  size_t pos = 0;
  while (pos < line.size()) {
    size_t end = line.find(' ', pos);
    if (end == std::string::npos) end = line.size();
    pdf::GlyphRun run;
    run.origin = {Quantize(x + font.TextWidth(line.substr(0, pos), size)), Quantize(baseline)};
    run.baseline_y = run.origin.y;
    run.width = Quantize(font.TextWidth(line.substr(pos, end - pos), size));
    run.font_size = size;
    BBox b = run.Box();
    box = box ? box->Union(b) : b;
    pos = end + 1;
  }
  return *box;
}

size_t CharCount(const std::vector<std::string> &lines) {
  size_t n = 0;
  for (const std::string &l : lines) n += l.size();
  return n;
}

struct Node {
  int column = 0;
  NodeClass cls = NodeClass::kAction;
  std::vector<std::string> lines;
  double baseline = 0;  // first line
  BBox box;
  std::vector<char> markers;
  bool see = false;
  std::string id;
  std::optional<std::string> label;
};

struct Label {
  std::vector<std::string> lines;
};

struct FootnoteDraft {
  char marker = 0;
  std::vector<std::string> lines;  // first line without the marker
  size_t node = 0;
};

struct PageTruth {
  std::vector<Node> nodes;
  std::vector<Edge> intra;  // ids assigned
  std::vector<Footnote> footnotes;
  std::optional<pdf::LinkAnnotation> link;
  std::optional<std::string> see_id;
};

class Jitter {
 public:
  Jitter(uint64_t seed, double amount) : rng_(DeriveSeed(seed, 0x717e)), amount_(amount) {}

  Point Next() {
    if (amount_ <= 0) return {};
    double dx = Quantize(rng_.Uniform(-amount_, amount_));
    double dy = Quantize(rng_.Uniform(-amount_, amount_));
    return {dx, dy};
  }

 private:
  Rng rng_;
  double amount_;
};

class Content {
 public:
  void Text(const char *font, double size, double x, double y, const std::string &text) {
    out_ += "BT /" + std::string(font) + " " + FormatFixed3(size) + " Tf " + FormatFixed3(x) +
            " " + FormatFixed3(y) + " Td (" + pdf::EscapePdfString(text) + ") Tj ET\n";
  }

  void Polyline(const std::vector<Point> &pts, const Point &d) {
    for (size_t i = 0; i < pts.size(); ++i) {
      out_ += FormatFixed3(pts[i].x + d.x) + " " + FormatFixed3(pts[i].y + d.y) +
              (i == 0 ? " m " : " l ");
    }
    out_ += "S\n";
  }

  void Triangle(const Point &a, const Point &b, const Point &c, const Point &d) {
    Polyline({a, b, c}, d);
    out_.resize(out_.size() - 2);
    out_ += "h f\n";
  }

  const std::string &str() const { return out_; }

 private:
  std::string out_;
};

struct Columns {
  int count = 1;
  double pitch = 0;
  double X(int c) const { return kMarginX + c * pitch; }
  double TextWidth() const { return pitch - kGutter; }
  double GutterLeft(int c) const { return X(c) + TextWidth() + 10; }
};

// Shaft from `from` to `to` plus a head at `to` pointing along the last leg.
void EmitArrow(Content &content, const std::vector<Point> &shaft, const Point &d) {
  content.Polyline(shaft, d);
  const Point &e = shaft.back(), &p = shaft[shaft.size() - 2];
  double len = Distance(e, p);
  double ux = (e.x - p.x) / len, uy = (e.y - p.y) / len;
  Point tip{e.x + 2 * ux, e.y + 2 * uy};
  Point l{e.x - 1.5 * uy, e.y + 1.5 * ux}, r{e.x + 1.5 * uy, e.y - 1.5 * ux};
  content.Triangle(tip, l, r, d);
}

std::vector<Point> Simplify(std::vector<Point> pts) {
  std::vector<Point> out;
  for (const Point &p : pts) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  return out;
}

class PageBuilder {
 public:
  PageBuilder(const CorpusSpec &spec, int page, bool link_next, Jitter &jitter)
      : spec_(spec), page_(page), link_next_(link_next), jitter_(jitter),
        rng_(DeriveSeed(spec.seed, 0x9a6e, static_cast<uint64_t>(page))) {
    cols_.count = spec.columns_per_page;
    cols_.pitch = (kPageWidth - 2 * kMarginX) / cols_.count;
  }

  PageTruth Build(pdf::PdfPageSpec &out) {
    PlaceNodes();
    PlaceLabels();
    WireEdges();
    PlaceFootnotes();
    BalanceVolumes();
    AssignIds();
    Emit(out);
    return std::move(truth_);
  }

 private:
  void PlaceNodes() {
    const PhrasePools &pools = spec_.vocabulary;
    const double width = cols_.TextWidth();
    std::vector<Node> &nodes = truth_.nodes;
    for (int c = 0; c < cols_.count; ++c) {
      for (int k = 0; k < spec_.nodes_per_column; ++k) {
        Node n;
        n.column = c;
        n.cls = graph::kAllNodeClasses[rng_.Below(std::size(graph::kAllNodeClasses))];
        for (int attempt = 0; attempt < 20; ++attempt) {
          n.lines = Wrap(rng_.Pick(ClassPool(pools, n.cls)), Regular(), kNodeSize, width);
          if (n.lines.size() <= kMaxNodeLines) break;
        }
        n.lines.resize(std::min<size_t>(n.lines.size(), kMaxNodeLines));
        nodes.push_back(std::move(n));
      }
    }
    if (link_next_ && rng_.Bernoulli(kSeeNodeProbability)) {
      Node n;
      n.column = cols_.count - 1;
      n.cls = NodeClass::kUncertain;
      n.see = true;
      n.lines = Wrap("See " + rng_.Pick(pools.see_targets), Regular(), kNodeSize, width);
      n.lines.resize(std::min<size_t>(n.lines.size(), kMaxNodeLines));
      nodes.push_back(std::move(n));
    }
    // Stack each column top-down.
    std::vector<double> next_top(cols_.count, kFirstNodeBaseline);
    for (Node &n : nodes) {
      double &b = next_top[n.column];
      n.baseline = b;
      double x = cols_.X(n.column);
      std::optional<BBox> box;
      for (size_t i = 0; i < n.lines.size(); ++i) {
        BBox lb = LineBox(n.lines[i], Regular(), kNodeSize, x, b - kNodeLeading * i);
        box = box ? box->Union(lb) : lb;
      }
      n.box = *box;
      double gap = 16 + 0.5 * rng_.UniformInt(0, 20);
      b = n.box.y0 - gap - 0.95 * kNodeSize;
    }
  }

  void PlaceLabels() {
    labels_.assign(cols_.count, std::nullopt);
    for (int c = 0; c < cols_.count; ++c) {
      if (!rng_.Bernoulli(0.7) || spec_.vocabulary.labels.empty()) continue;
      Label l;
      for (int attempt = 0; attempt < 20; ++attempt) {
        l.lines = Wrap(rng_.Pick(spec_.vocabulary.labels), Bold(), kLabelSize,
                       cols_.TextWidth());
        if (l.lines.size() <= kMaxLabelLines) break;
      }
      if (l.lines.size() > kMaxLabelLines) continue;
      labels_[c] = std::move(l);
    }
  }

  void WireEdges() {
    std::vector<Node> &nodes = truth_.nodes;
    std::vector<std::vector<size_t>> by_col(cols_.count);
    for (size_t i = 0; i < nodes.size(); ++i) by_col[nodes[i].column].push_back(i);
    for (const std::vector<size_t> &col : by_col) {
      for (size_t k = 0; k + 1 < col.size(); ++k) {
        if (rng_.Bernoulli(spec_.edge_density)) vertical_.push_back({col[k], col[k + 1]});
      }
    }
    std::vector<int> right_out(nodes.size(), 0);
    for (int c = 0; c + 1 < cols_.count; ++c) {
      for (size_t t : by_col[c + 1]) {
        if (!rng_.Bernoulli(spec_.edge_density)) continue;
        std::vector<size_t> candidates;
        for (size_t s : by_col[c]) {
          if (right_out[s] < 2) candidates.push_back(s);
        }
        if (candidates.empty()) continue;
        size_t s = rng_.Pick(candidates);
        ++right_out[s];
        cross_.push_back({s, t});
      }
    }
  }

  void PlaceFootnotes() {
    const PhrasePools &pools = spec_.vocabulary;
    if (pools.footnotes.empty()) return;
    int lines_used = 0;
    for (size_t i = 0; i < truth_.nodes.size(); ++i) {
      if (truth_.nodes[i].see || !rng_.Bernoulli(spec_.footnote_rate)) continue;
      int want = rng_.Bernoulli(0.25) ? 2 : 1;
      for (int m = 0; m < want; ++m) {
        if (static_cast<int>(footnotes_.size()) >= kMaxMarkers) return;
        FootnoteDraft f;
        f.marker = static_cast<char>('a' + footnotes_.size());
        f.node = i;
        f.lines.push_back(rng_.Pick(pools.footnotes));
        if (rng_.Bernoulli(0.2)) f.lines.push_back(rng_.Pick(pools.footnotes));
        if (lines_used + static_cast<int>(f.lines.size()) > kMaxFootLines) return;
        lines_used += static_cast<int>(f.lines.size());
        footnotes_.push_back(std::move(f));
      }
    }
  }

  // Footnote detection compares sizes against the character-weighted modal
  // size, so body text must outweigh every other size on the page.
  void BalanceVolumes() {
    size_t body = 0;
    for (const Node &n : truth_.nodes) body += CharCount(n.lines);
    auto foot_chars = [&] {
      size_t n = 0;
      for (const FootnoteDraft &f : footnotes_) n += 2 + CharCount(f.lines);
      return n;
    };
    while (!footnotes_.empty() && foot_chars() >= body) footnotes_.pop_back();
    auto label_chars = [&] {
      size_t n = 0;
      for (const auto &l : labels_) {
        if (l) n += CharCount(l->lines);
      }
      return n;
    };
    for (int c = cols_.count - 1; c >= 0 && label_chars() >= body; --c) labels_[c].reset();
    for (const FootnoteDraft &f : footnotes_) truth_.nodes[f.node].markers.push_back(f.marker);
  }

  void AssignIds() {
    std::vector<NodeBlock> blocks;
    for (const Node &n : truth_.nodes) {
      NodeBlock b;
      b.page_index = page_;
      b.bbox = n.box;
      b.lines = n.lines;
      blocks.push_back(std::move(b));
    }
    layout::AssignNodeIds(blocks);
    for (Node &n : truth_.nodes) {
      for (const NodeBlock &b : blocks) {
        if (b.bbox == n.box && b.lines == n.lines) n.id = b.id;
      }
    }
    for (auto [s, t] : vertical_) {
      truth_.intra.push_back({truth_.nodes[s].id, truth_.nodes[t].id, EdgeKind::kIntraPage});
    }
    for (auto [s, t] : cross_) {
      truth_.intra.push_back({truth_.nodes[s].id, truth_.nodes[t].id, EdgeKind::kIntraPage});
    }
    for (const FootnoteDraft &f : footnotes_) {
      truth_.footnotes.push_back({f.marker, Join(f.lines, " "), page_});
    }
  }

  void Emit(pdf::PdfPageSpec &out) {
    out.media_box = {0, 0, kPageWidth, kPageHeight};
    Content content;
    const double width = cols_.TextWidth();
    for (int c = 0; c < cols_.count; ++c) {
      double x = cols_.X(c);
      if (c > 0) {
        Point d = jitter_.Next();
        content.Polyline({{x - 4, 570}, {x - 4, 96}}, d);
      }
      if (labels_[c]) {
        Point d = jitter_.Next();
        const std::vector<std::string> &lines = labels_[c]->lines;
        for (size_t i = 0; i < lines.size(); ++i) {
          double b = kLabelBaseline + kLabelLeading * (lines.size() - 1 - i);
          content.Text("F2", kLabelSize, x + d.x, b + d.y, lines[i]);
        }
        content.Polyline({{x, kLabelBaseline - 4}, {x + width, kLabelBaseline - 4}}, d);
      }
    }
    for (Node &n : truth_.nodes) {
      Point d = jitter_.Next();
      double x = cols_.X(n.column);
      for (size_t i = 0; i < n.lines.size(); ++i) {
        content.Text("F1", kNodeSize, x + d.x, n.baseline - kNodeLeading * i + d.y,
                     n.lines[i]);
      }
      if (!n.markers.empty()) {
        double last = n.baseline - kNodeLeading * (n.lines.size() - 1);
        BBox lb = LineBox(n.lines.back(), Regular(), kNodeSize, x, last);
        std::string sup;
        for (char m : n.markers) sup += (sup.empty() ? "" : ",") + std::string(1, m);
        content.Text("F1", kSupSize, lb.x1 + 0.5 + d.x, last + kSupRise + d.y, sup);
      }
      if (labels_[n.column]) n.label = Join(labels_[n.column]->lines, " ");
    }
    for (auto [s, t] : vertical_) {
      const Node &a = truth_.nodes[s], &b = truth_.nodes[t];
      double x = cols_.X(a.column) + 6;
      EmitArrow(content, {{x, a.box.y0 - kStub}, {x, b.box.y1 + kStub}}, jitter_.Next());
    }
    std::vector<int> out_count(truth_.nodes.size(), 0), out_seen(truth_.nodes.size(), 0);
    for (auto [s, t] : cross_) ++out_count[s];
    std::vector<int> gutter_used(cols_.count, 0);
    for (auto [s, t] : cross_) {
      const Node &a = truth_.nodes[s], &b = truth_.nodes[t];
      double off = out_count[s] == 2 ? (out_seen[s]++ == 0 ? 2.5 : -2.5) : 0;
      double sy = a.box.center().y + off, ty = b.box.center().y;
      double xe = cols_.GutterLeft(a.column) + 4 * (++gutter_used[a.column]);
      std::vector<Point> shaft = Simplify({{a.box.x1 + kStub, sy},
                                           {xe, sy},
                                           {xe, ty},
                                           {cols_.X(b.column) - kStub, ty}});
      if (shaft.size() == 3 && sy == ty) shaft.erase(shaft.begin() + 1);
      EmitArrow(content, shaft, jitter_.Next());
    }
    int line = 0;
    for (const FootnoteDraft &f : footnotes_) {
      Point d = jitter_.Next();
      for (size_t i = 0; i < f.lines.size(); ++i, ++line) {
        std::string text = i == 0 ? std::string(1, f.marker) + " " + f.lines[0] : f.lines[i];
        content.Text("F3", kFootSize, kMarginX + d.x, kFootBaseline - kFootLeading * line + d.y,
                     text);
      }
    }
    if (link_next_) {
      pdf::LinkAnnotation link;
      link.target_page = page_ + 1;
      link.rect = kCornerLinkRect;
      for (const Node &n : truth_.nodes) {
        if (n.see) {
          link.rect = n.box;
          truth_.see_id = n.id;
        }
      }
      truth_.link = link;
      Point d = jitter_.Next();
      BBox r = link.rect;
      out.links.push_back({{r.x0 + d.x, r.y0 + d.y, r.x1 + d.x, r.y1 + d.y}, link.target_page});
    }
    out.content = content.str();
  }

  const CorpusSpec &spec_;
  int page_;
  bool link_next_;
  Jitter &jitter_;
  Rng rng_;
  Columns cols_;
  PageTruth truth_;
  std::vector<std::optional<Label>> labels_;
  std::vector<std::pair<size_t, size_t>> vertical_, cross_;
  std::vector<FootnoteDraft> footnotes_;
};

std::set<std::string> WithIntra(const PageTruth &p, bool incoming) {
  std::set<std::string> ids;
  for (const Edge &e : p.intra) ids.insert(incoming ? e.to_id : e.from_id);
  return ids;
}

void CheckRate(double v, const char *name) {
  if (!(v >= 0 && v <= 1)) {
    throw InvalidSpec(std::string(name) + " must be in [0,1], got " + FormatFixed3(v));
  }
}

}  // namespace

void ValidateSpec(const CorpusSpec &spec) {
  if (spec.pages < 1 || spec.pages > 1000) {
    throw InvalidSpec("pages must be in 1..1000, got " + std::to_string(spec.pages));
  }
  if (spec.columns_per_page < 2 || spec.columns_per_page > 5) {
    throw InvalidSpec("columns_per_page must be in 2..5, got " +
                      std::to_string(spec.columns_per_page));
  }
  if (spec.nodes_per_column < 1 || spec.nodes_per_column > 6) {
    throw InvalidSpec("nodes_per_column must be in 1..6, got " +
                      std::to_string(spec.nodes_per_column));
  }
  CheckRate(spec.edge_density, "edge_density");
  CheckRate(spec.footnote_rate, "footnote_rate");
  CheckRate(spec.cross_page_link_rate, "cross_page_link_rate");
  if (!(spec.jitter_pt >= 0) || spec.jitter_pt > 10) {
    throw InvalidSpec("jitter_pt must be in [0,10], got " + FormatFixed3(spec.jitter_pt));
  }
  const PhrasePools &v = spec.vocabulary;
  if (v.by_class.size() != std::size(graph::kAllNodeClasses)) {
    throw InvalidSpec("vocabulary needs one phrase pool per node class");
  }
  for (size_t i = 0; i < v.by_class.size(); ++i) {
    if (v.by_class[i].empty()) {
      throw InvalidSpec(std::string("empty phrase pool for ") +
                        graph::NodeClassName(graph::kAllNodeClasses[i]));
    }
  }
  if (v.see_targets.empty()) throw InvalidSpec("vocabulary needs see_targets");
  auto ascii = [](const std::vector<std::string> &pool, const char *what) {
    for (const std::string &s : pool) {
      if (Trim(s).empty()) throw InvalidSpec(std::string("blank phrase in ") + what);
      for (unsigned char ch : s) {
        if (ch < 32 || ch > 126) {
          throw InvalidSpec(std::string("non-ASCII phrase in ") + what + ": " + s);
        }
      }
    }
  };
  for (const auto &pool : v.by_class) ascii(pool, "class pools");
  ascii(v.labels, "labels");
  ascii(v.footnotes, "footnotes");
  ascii(v.see_targets, "see_targets");
}

CorpusSpec Perturb(CorpusSpec spec, double jitter_pt) {
  spec.jitter_pt = jitter_pt;
  ValidateSpec(spec);
  return spec;
}

CorpusSpec CorpusSpecForSeed(uint64_t seed, double jitter_pt) {
  Rng rng(DeriveSeed(seed, 0xc0c0));
  CorpusSpec spec;
  spec.seed = seed;
  spec.pages = rng.UniformInt(1, 2);
  spec.columns_per_page = rng.UniformInt(2, 5);
  spec.nodes_per_column = rng.UniformInt(2, 6);
  spec.edge_density = 0.5 + 0.5 * rng.NextDouble();
  spec.footnote_rate = 0.25 + 0.25 * rng.NextDouble();
  spec.cross_page_link_rate = 0.7;
  spec.jitter_pt = jitter_pt;
  return spec;
}

GeneratedDocument GenerateDocument(const CorpusSpec &spec) {
  ValidateSpec(spec);
  Rng doc_rng(DeriveSeed(spec.seed, 0xd0c));
  std::vector<bool> link_next(spec.pages, false);
  for (int p = 0; p + 1 < spec.pages; ++p) {
    link_next[p] = doc_rng.Bernoulli(spec.cross_page_link_rate);
  }
  Jitter jitter(spec.seed, spec.jitter_pt);
  std::vector<pdf::PdfPageSpec> pdf_pages(spec.pages);
  std::vector<PageTruth> pages;
  for (int p = 0; p < spec.pages; ++p) {
    pages.push_back(PageBuilder(spec, p, link_next[p], jitter).Build(pdf_pages[p]));
  }

  GeneratedDocument doc;
  pdf::PdfWriterOptions options;
  options.fonts = {{"F1", "Helvetica"}, {"F2", "Helvetica-Bold"}, {"F3", "Times-Roman"}};
  doc.pdf = pdf::WritePdf(pdf_pages, options);

  GuidelineGraph &g = doc.truth;
  for (int p = 0; p < spec.pages; ++p) {
    const PageTruth &pt = pages[p];
    for (const Node &n : pt.nodes) {
      NodeBlock b;
      b.id = n.id;
      b.page_index = p;
      b.bbox = n.box;
      b.lines = n.lines;
      b.footnote_markers = n.markers;
      g.nodes.push_back(b);
      g.annotations[n.id].node_class = n.cls;
    }
    g.edges.insert(g.edges.end(), pt.intra.begin(), pt.intra.end());
    g.footnotes.insert(g.footnotes.end(), pt.footnotes.begin(), pt.footnotes.end());
    if (!pt.link) continue;
    const PageTruth &next = pages[p + 1];
    std::set<std::string> has_out = WithIntra(pt, false), has_in = WithIntra(next, true);
    std::vector<std::string> sinks;
    if (pt.see_id) {
      sinks.push_back(*pt.see_id);
    } else {
      for (const Node &n : pt.nodes) {
        if (!has_out.count(n.id)) sinks.push_back(n.id);
      }
    }
    for (const std::string &s : sinks) {
      for (const Node &n : next.nodes) {
        if (!has_in.count(n.id)) g.edges.push_back({s, n.id, EdgeKind::kCrossPage});
      }
    }
  }
  // Labels were attached while emitting.
  for (int p = 0, k = 0; p < spec.pages; ++p) {
    for (const Node &n : pages[p].nodes) g.nodes[k++].label = n.label;
  }
  graph::Canonicalize(g);
  graph::CheckInvariants(g);
  return doc;
}

std::vector<GeneratedDocument> GenerateCorpus(const std::vector<CorpusSpec> &specs, int jobs) {
  std::vector<GeneratedDocument> out(specs.size());
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::optional<std::pair<size_t, std::exception_ptr>> failure;
  auto work = [&] {
    for (size_t i; (i = next++) < specs.size();) {
      try {
        out[i] = GenerateDocument(specs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure || i < failure->first) failure.emplace(i, std::current_exception());
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(work);
  work();
  for (std::thread &t : threads) t.join();
  if (failure) std::rethrow_exception(failure->second);
  return out;
}

Json SpecToJson(const CorpusSpec &spec) {
  Json j = {{"seed", spec.seed},
            {"pages", spec.pages},
            {"columns_per_page", spec.columns_per_page},
            {"nodes_per_column", spec.nodes_per_column},
            {"edge_density", spec.edge_density},
            {"footnote_rate", spec.footnote_rate},
            {"cross_page_link_rate", spec.cross_page_link_rate},
            {"jitter_pt", spec.jitter_pt}};
  if (!(spec.vocabulary == DefaultPools())) {
    Json classes = Json::object();
    for (size_t i = 0; i < spec.vocabulary.by_class.size(); ++i) {
      classes[graph::NodeClassName(graph::kAllNodeClasses[i])] = spec.vocabulary.by_class[i];
    }
    j["vocabulary"] = {{"classes", classes},
                       {"labels", spec.vocabulary.labels},
                       {"footnotes", spec.vocabulary.footnotes},
                       {"see_targets", spec.vocabulary.see_targets}};
  }
  return j;
}

namespace {

std::vector<std::string> StringList(const Json &j, const std::string &path) {
  std::vector<std::string> out;
  const Json &arr = RequireArray(j, path);
  for (size_t i = 0; i < arr.size(); ++i) out.push_back(RequireString(arr[i], IndexPath(path, i)));
  return out;
}

}  // namespace

CorpusSpec SpecFromJson(const Json &j, const std::string &path) {
  RequireObject(j, path);
  RejectUnknownKeys(j,
                    {"seed", "pages", "columns_per_page", "nodes_per_column", "edge_density",
                     "footnote_rate", "cross_page_link_rate", "jitter_pt", "vocabulary"},
                    path);
  CorpusSpec spec;
  auto num = [&](const char *key, double &field) {
    if (j.contains(key)) field = RequireNumber(j[key], JoinPath(path, key));
  };
  auto integer = [&](const char *key, int &field) {
    if (j.contains(key)) field = static_cast<int>(RequireInt(j[key], JoinPath(path, key)));
  };
  if (j.contains("seed")) {
    int64_t seed = RequireInt(j["seed"], JoinPath(path, "seed"));
    if (seed < 0) throw SchemaViolation(JoinPath(path, "seed"), "must be non-negative");
    spec.seed = static_cast<uint64_t>(seed);
  }
  integer("pages", spec.pages);
  integer("columns_per_page", spec.columns_per_page);
  integer("nodes_per_column", spec.nodes_per_column);
  num("edge_density", spec.edge_density);
  num("footnote_rate", spec.footnote_rate);
  num("cross_page_link_rate", spec.cross_page_link_rate);
  num("jitter_pt", spec.jitter_pt);
  if (j.contains("vocabulary")) {
    std::string vp = JoinPath(path, "vocabulary");
    const Json &v = RequireObject(j["vocabulary"], vp);
    RejectUnknownKeys(v, {"classes", "labels", "footnotes", "see_targets"}, vp);
    PhrasePools pools = DefaultPools();
    if (v.contains("classes")) {
      std::string cp = JoinPath(vp, "classes");
      const Json &classes = RequireObject(v["classes"], cp);
      for (auto it = classes.begin(); it != classes.end(); ++it) {
        std::optional<NodeClass> c = graph::ParseNodeClass(it.key());
        if (!c) throw SchemaViolation(JoinPath(cp, it.key()), "unknown node class");
        pools.by_class[static_cast<size_t>(*c)] = StringList(it.value(), JoinPath(cp, it.key()));
      }
    }
    if (v.contains("labels")) pools.labels = StringList(v["labels"], JoinPath(vp, "labels"));
    if (v.contains("footnotes")) {
      pools.footnotes = StringList(v["footnotes"], JoinPath(vp, "footnotes"));
    }
    if (v.contains("see_targets")) {
      pools.see_targets = StringList(v["see_targets"], JoinPath(vp, "see_targets"));
    }
    spec.vocabulary = std::move(pools);
  }
  ValidateSpec(spec);
  return spec;
}

std::string FormatManifest(const std::vector<ManifestEntry> &entries) {
  Json list = Json::array();
  for (const ManifestEntry &e : entries) {
    list.push_back({{"pdf", e.pdf_path}, {"truth", e.truth_path}, {"spec", SpecToJson(e.spec)}});
  }
  return Json{{"documents", list}}.dump(2) + "\n";
}

std::vector<ManifestEntry> ParseManifest(std::string_view text) {
  Json j = ParseJson(text);
  RequireObject(j, "$");
  RejectUnknownKeys(j, {"documents"}, "$");
  const Json &docs = RequireArray(RequireKey(j, "documents", "$"), "documents");
  std::vector<ManifestEntry> out;
  for (size_t i = 0; i < docs.size(); ++i) {
    std::string p = IndexPath("documents", i);
    const Json &d = RequireObject(docs[i], p);
    RejectUnknownKeys(d, {"pdf", "truth", "spec"}, p);
    ManifestEntry e;
    e.pdf_path = RequireString(RequireKey(d, "pdf", p), JoinPath(p, "pdf"));
    e.truth_path = RequireString(RequireKey(d, "truth", p), JoinPath(p, "truth"));
    e.spec = SpecFromJson(RequireKey(d, "spec", p), JoinPath(p, "spec"));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace guidegraph::synth
