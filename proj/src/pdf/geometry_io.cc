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

#include "guidegraph/pdf/geometry_io.h"

#include "guidegraph/base/error.h"
#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"

namespace guidegraph::pdf {
namespace {

std::string Num(double v) { return FormatFixed3(v); }

std::string PointText(const Point &p) { return "[" + Num(p.x) + "," + Num(p.y) + "]"; }

std::string BoxText(const BBox &b) {
  return "[" + Num(b.x0) + "," + Num(b.y0) + "," + Num(b.x1) + "," + Num(b.y1) + "]";
}

template <typename T, typename F>
std::string ListText(const std::vector<T> &items, F &&render, const char *indent) {
  if (items.empty()) return "[]";
  std::string out = "[\n";
  for (size_t i = 0; i < items.size(); ++i) {
    out += indent;
    out += render(items[i]);
    out += i + 1 < items.size() ? ",\n" : "\n";
  }
  out += std::string(indent).substr(2);
  out += "]";
  return out;
}

double Coord(const Json &j, const std::string &path) {
  return Quantize(RequireNumber(j, path));
}

Point ReadPoint(const Json &j, const std::string &path) {
  RequireArray(j, path);
  if (j.size() != 2) throw SchemaViolation(path, "expected [x, y]");
  return {Coord(j[0], IndexPath(path, 0)), Coord(j[1], IndexPath(path, 1))};
}

BBox ReadBox(const Json &j, const std::string &path) {
  RequireArray(j, path);
  if (j.size() != 4) throw SchemaViolation(path, "expected [x0, y0, x1, y1]");
  BBox b{Coord(j[0], IndexPath(path, 0)), Coord(j[1], IndexPath(path, 1)),
         Coord(j[2], IndexPath(path, 2)), Coord(j[3], IndexPath(path, 3))};
  if (b.x0 > b.x1 || b.y0 > b.y1) throw SchemaViolation(path, "inverted box");
  return b;
}

GlyphRun ReadRun(const Json &j, const std::string &path, int page_index) {
  RejectUnknownKeys(j, {"baseline_y", "font_size", "origin", "page_index", "text", "width"},
                    path);
  GlyphRun r;
  r.text = RequireString(RequireKey(j, "text", path), JoinPath(path, "text"));
  if (r.text.empty()) throw SchemaViolation(JoinPath(path, "text"), "empty text");
  r.origin = ReadPoint(RequireKey(j, "origin", path), JoinPath(path, "origin"));
  r.width = Coord(RequireKey(j, "width", path), JoinPath(path, "width"));
  if (r.width < 0) throw SchemaViolation(JoinPath(path, "width"), "negative width");
  r.font_size = Coord(RequireKey(j, "font_size", path), JoinPath(path, "font_size"));
  if (r.font_size <= 0) {
    throw SchemaViolation(JoinPath(path, "font_size"), "font size must be positive");
  }
  r.baseline_y = Coord(RequireKey(j, "baseline_y", path), JoinPath(path, "baseline_y"));
  r.page_index = static_cast<int>(
      RequireInt(RequireKey(j, "page_index", path), JoinPath(path, "page_index")));
  if (r.page_index != page_index) {
    throw SchemaViolation(JoinPath(path, "page_index"), "does not match enclosing page");
  }
  return r;
}

Segment ReadSegment(const Json &j, const std::string &path) {
  RejectUnknownKeys(j, {"p0", "p1", "stroke_width"}, path);
  Segment s;
  s.p0 = ReadPoint(RequireKey(j, "p0", path), JoinPath(path, "p0"));
  s.p1 = ReadPoint(RequireKey(j, "p1", path), JoinPath(path, "p1"));
  s.stroke_width =
      Coord(RequireKey(j, "stroke_width", path), JoinPath(path, "stroke_width"));
  if (s.p0 == s.p1) throw SchemaViolation(path, "zero-length segment");
  return s;
}

FilledPolygon ReadPolygon(const Json &j, const std::string &path) {
  RejectUnknownKeys(j, {"is_triangle", "vertices"}, path);
  FilledPolygon poly;
  std::string vpath = JoinPath(path, "vertices");
  const Json &verts = RequireArray(RequireKey(j, "vertices", path), vpath);
  for (size_t i = 0; i < verts.size(); ++i) {
    poly.vertices.push_back(ReadPoint(verts[i], IndexPath(vpath, i)));
  }
  if (poly.vertices.size() < 3) throw SchemaViolation(vpath, "fewer than 3 vertices");
  if (poly.Area() <= 0) throw SchemaViolation(vpath, "zero area");
  if (auto it = j.find("is_triangle"); it != j.end()) {
    if (RequireBool(*it, JoinPath(path, "is_triangle")) != poly.is_triangle()) {
      throw SchemaViolation(JoinPath(path, "is_triangle"), "disagrees with vertex count");
    }
  }
  return poly;
}

}  // namespace

std::string ExportGeometry(const DocumentGeometry &doc) {
  std::string out = "{\n  \"pages\": ";
  out += ListText(
      doc.pages,
      [](const PageGeometry &page) {
        std::string p = "{\n      \"glyph_runs\": ";
        p += ListText(
            page.glyph_runs,
            [](const GlyphRun &r) {
              return "{\"baseline_y\": " + Num(r.baseline_y) +
                     ", \"font_size\": " + Num(r.font_size) +
                     ", \"origin\": " + PointText(r.origin) +
                     ", \"page_index\": " + std::to_string(r.page_index) +
                     ", \"text\": " + JsonQuote(r.text) + ", \"width\": " + Num(r.width) +
                     "}";
            },
            "        ");
        p += ",\n      \"links\": ";
        p += ListText(
            page.links,
            [](const LinkAnnotation &l) {
              return "{\"rect\": " + BoxText(l.rect) +
                     ", \"target_page\": " + std::to_string(l.target_page) + "}";
            },
            "        ");
        p += ",\n      \"media_box\": " + BoxText(page.media_box);
        p += ",\n      \"page_index\": " + std::to_string(page.page_index);
        p += ",\n      \"polygons\": ";
        p += ListText(
            page.polygons,
            [](const FilledPolygon &poly) {
              std::string v = "{\"is_triangle\": ";
              v += poly.is_triangle() ? "true" : "false";
              v += ", \"vertices\": [";
              for (size_t i = 0; i < poly.vertices.size(); ++i) {
                if (i) v += ", ";
                v += PointText(poly.vertices[i]);
              }
              return v + "]}";
            },
            "        ");
        p += ",\n      \"segments\": ";
        p += ListText(
            page.segments,
            [](const Segment &s) {
              return "{\"p0\": " + PointText(s.p0) + ", \"p1\": " + PointText(s.p1) +
                     ", \"stroke_width\": " + Num(s.stroke_width) + "}";
            },
            "        ");
        p += "\n    }";
        return p;
      },
      "    ");
  out += ",\n  \"source_digest\": " + JsonQuote(doc.source_digest) + "\n}\n";
  return out;
}

DocumentGeometry ImportGeometry(std::string_view text) {
  Json root = ParseJson(text);
  RejectUnknownKeys(root, {"pages", "source_digest"}, "$");
  DocumentGeometry doc;
  doc.source_digest = RequireString(RequireKey(root, "source_digest", "$"), "source_digest");
  const Json &pages = RequireArray(RequireKey(root, "pages", "$"), "pages");
  for (size_t i = 0; i < pages.size(); ++i) {
    std::string path = IndexPath("pages", i);
    const Json &pj = pages[i];
    RejectUnknownKeys(pj,
                      {"glyph_runs", "links", "media_box", "page_index", "polygons",
                       "segments"},
                      path);
    PageGeometry page;
    page.page_index = static_cast<int>(
        RequireInt(RequireKey(pj, "page_index", path), JoinPath(path, "page_index")));
    if (page.page_index != static_cast<int>(i)) {
      throw SchemaViolation(JoinPath(path, "page_index"),
                            "expected " + std::to_string(i) + ", page indices must be "
                            "0..n-1 without gaps");
    }
    page.media_box = ReadBox(RequireKey(pj, "media_box", path), JoinPath(path, "media_box"));

    std::string rpath = JoinPath(path, "glyph_runs");
    const Json &runs = RequireArray(RequireKey(pj, "glyph_runs", path), rpath);
    for (size_t k = 0; k < runs.size(); ++k) {
      page.glyph_runs.push_back(ReadRun(runs[k], IndexPath(rpath, k), page.page_index));
    }
    std::string spath = JoinPath(path, "segments");
    const Json &segs = RequireArray(RequireKey(pj, "segments", path), spath);
    for (size_t k = 0; k < segs.size(); ++k) {
      page.segments.push_back(ReadSegment(segs[k], IndexPath(spath, k)));
    }
    std::string ppath = JoinPath(path, "polygons");
    const Json &polys = RequireArray(RequireKey(pj, "polygons", path), ppath);
    for (size_t k = 0; k < polys.size(); ++k) {
      page.polygons.push_back(ReadPolygon(polys[k], IndexPath(ppath, k)));
    }
    std::string lpath = JoinPath(path, "links");
    const Json &links = RequireArray(RequireKey(pj, "links", path), lpath);
    for (size_t k = 0; k < links.size(); ++k) {
      std::string one = IndexPath(lpath, k);
      RejectUnknownKeys(links[k], {"rect", "target_page"}, one);
      LinkAnnotation link;
      link.rect = ReadBox(RequireKey(links[k], "rect", one), JoinPath(one, "rect"));
      link.target_page = static_cast<int>(RequireInt(
          RequireKey(links[k], "target_page", one), JoinPath(one, "target_page")));
      page.links.push_back(link);
    }
    doc.pages.push_back(std::move(page));
  }
  // Link targets can only be checked once the page count is known.
  for (size_t i = 0; i < doc.pages.size(); ++i) {
    for (size_t k = 0; k < doc.pages[i].links.size(); ++k) {
      int t = doc.pages[i].links[k].target_page;
      if (t < 0 || t >= static_cast<int>(doc.pages.size())) {
        throw SchemaViolation(
            JoinPath(IndexPath(JoinPath(IndexPath("pages", i), "links"), k), "target_page"),
            "no such page");
      }
    }
  }
  return doc;
}

}  // namespace guidegraph::pdf
