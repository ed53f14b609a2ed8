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

#include "guidegraph/pdf/content_stream.h"

#include <cmath>
#include <set>
#include <vector>

#include "guidegraph/base/util.h"
#include "guidegraph/pdf/errors.h"
#include "guidegraph/pdf/object.h"

namespace guidegraph::pdf {
namespace {

struct Matrix {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  // this × other, in PDF row-vector convention.
  Matrix Then(const Matrix &o) const {
    return {a * o.a + b * o.c,       a * o.b + b * o.d,
            c * o.a + d * o.c,       c * o.b + d * o.d,
            e * o.a + f * o.c + o.e, e * o.b + f * o.d + o.f};
  }

  Point Apply(double x, double y) const {
    return {a * x + c * y + e, b * x + d * y + f};
  }

  static Matrix Translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
};

struct GraphicsState {
  Matrix ctm;
  double line_width = 1;
  double char_spacing = 0;
  double word_spacing = 0;
  double horizontal_scale = 1;
  double leading = 0;
  double rise = 0;
  const FontResource *font = nullptr;
  double font_size = 0;
};

struct Subpath {
  std::vector<Point> points;
  bool closed = false;
};

// Operators that only change state we do not track.
const std::set<std::string> &IgnoredOperators() {
  static const std::set<std::string> *ops = new std::set<std::string>{
      "g",  "G",   "rg",  "RG", "k",  "K",  "cs", "CS", "sc", "SC", "scn",
      "SCN", "gs", "d",   "j",  "J",  "M",  "i",  "ri", "sh", "Do", "d0",
      "d1", "BX",  "EX",  "MP", "DP", "BMC", "BDC", "EMC", "W", "W*"};
  return *ops;
}

Point QuantizedPoint(const Point &p) { return {Quantize(p.x), Quantize(p.y)}; }

double PolygonArea(const std::vector<Point> &v) {
  double sum = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Point &p = v[i];
    const Point &q = v[(i + 1) % v.size()];
    sum += p.x * q.y - q.x * p.y;
  }
  return std::abs(sum) / 2;
}

class Interpreter {
 public:
  Interpreter(const FontMap &fonts, const BBox &media_box, int page_index,
              ContentStats *stats, const InterpreterOptions &options)
      : fonts_(fonts), stats_(stats), options_(options) {
    page_.page_index = page_index;
    page_.media_box = media_box;
  }

  PageGeometry Run(std::string_view stream) {
    PdfParser parser(stream);
    std::vector<PdfObject> operands;
    while (!parser.AtEnd()) {
      int64_t op_offset = parser.offset();
      PdfObject obj = parser.ParseObject(/*content_mode=*/true);
      if (!obj.IsOperator()) {
        operands.push_back(std::move(obj));
        continue;
      }
      const std::string &op = obj.AsOperator();
      if (op == "BI") {
        parser.SkipInlineImage();
      } else if (!Execute(op, operands, op_offset)) {
        if (stats_ != nullptr) {
          ++stats_->skipped_operators;
          ++stats_->skipped_by_name[op];
        }
      }
      operands.clear();
    }
    return std::move(page_);
  }

 private:
  // Returns false for unrecognized operators.
  bool Execute(const std::string &op, const std::vector<PdfObject> &args,
               int64_t offset) {
    auto num = [&](size_t i) { return args[i].AsNumber(); };
    auto need_numbers = [&](size_t n) {
      if (args.size() < n) return false;
      for (size_t i = args.size() - n; i < args.size(); ++i) {
        if (!args[i].IsNumber()) return false;
      }
      return true;
    };
    // Operands are taken from the end so that stray extras are ignored.
    auto arg = [&](size_t n, size_t i) { return num(args.size() - n + i); };
    auto malformed = [&] {
      if (stats_ != nullptr) ++stats_->malformed_operations;
      return true;
    };

    GraphicsState &gs = state_;
    if (op == "q") {
      stack_.push_back(gs);
    } else if (op == "Q") {
      if (stack_.empty()) throw UnbalancedStateStack(offset);
      state_ = stack_.back();
      stack_.pop_back();
    } else if (op == "cm") {
      if (!need_numbers(6)) return malformed();
      Matrix m{arg(6, 0), arg(6, 1), arg(6, 2), arg(6, 3), arg(6, 4), arg(6, 5)};
      gs.ctm = m.Then(gs.ctm);
    } else if (op == "w") {
      if (!need_numbers(1)) return malformed();
      gs.line_width = arg(1, 0);
    } else if (op == "BT") {
      text_matrix_ = line_matrix_ = Matrix{};
    } else if (op == "ET") {
      // Nothing to flush: runs never span show operators.
    } else if (op == "Tf") {
      if (args.size() < 2 || !args[args.size() - 2].IsName() ||
          !args.back().IsNumber()) {
        return malformed();
      }
      const std::string &name = args[args.size() - 2].AsName();
      auto it = fonts_.find(name);
      if (it == fonts_.end()) {
        throw UnsupportedFont("/" + name + " (no such font resource)", offset);
      }
      if (it->second.metrics == nullptr) {
        throw UnsupportedFont(it->second.base_font, it->second.offset >= 0
                                                        ? it->second.offset
                                                        : offset);
      }
      gs.font = &it->second;
      gs.font_size = args.back().AsNumber();
    } else if (op == "Td") {
      if (!need_numbers(2)) return malformed();
      MoveText(arg(2, 0), arg(2, 1));
    } else if (op == "TD") {
      if (!need_numbers(2)) return malformed();
      gs.leading = -arg(2, 1);
      MoveText(arg(2, 0), arg(2, 1));
    } else if (op == "Tm") {
      if (!need_numbers(6)) return malformed();
      text_matrix_ = line_matrix_ =
          Matrix{arg(6, 0), arg(6, 1), arg(6, 2), arg(6, 3), arg(6, 4),
                 arg(6, 5)};
    } else if (op == "T*") {
      MoveText(0, -gs.leading);
    } else if (op == "TL") {
      if (!need_numbers(1)) return malformed();
      gs.leading = arg(1, 0);
    } else if (op == "Tc") {
      if (!need_numbers(1)) return malformed();
      gs.char_spacing = arg(1, 0);
    } else if (op == "Tw") {
      if (!need_numbers(1)) return malformed();
      gs.word_spacing = arg(1, 0);
    } else if (op == "Tz") {
      if (!need_numbers(1)) return malformed();
      gs.horizontal_scale = arg(1, 0) / 100.0;
    } else if (op == "Ts") {
      if (!need_numbers(1)) return malformed();
      gs.rise = arg(1, 0);
    } else if (op == "Tr") {
      // Rendering mode does not affect geometry.
    } else if (op == "Tj" || op == "'") {
      if (args.empty() || !args.back().IsString()) return malformed();
      if (op == "'") MoveText(0, -gs.leading);
      ShowString(args.back().AsString(), offset);
      FlushRun();
    } else if (op == "\"") {
      if (args.size() < 3 || !args.back().IsString() ||
          !args[args.size() - 3].IsNumber() ||
          !args[args.size() - 2].IsNumber()) {
        return malformed();
      }
      gs.word_spacing = args[args.size() - 3].AsNumber();
      gs.char_spacing = args[args.size() - 2].AsNumber();
      MoveText(0, -gs.leading);
      ShowString(args.back().AsString(), offset);
      FlushRun();
    } else if (op == "TJ") {
      if (args.empty() || !args.back().IsArray()) return malformed();
      for (const PdfObject &item : args.back().AsArray()) {
        if (item.IsString()) {
          ShowString(item.AsString(), offset);
        } else if (item.IsNumber()) {
          double tx = -item.AsNumber() / 1000.0 * gs.font_size *
                      gs.horizontal_scale;
          text_matrix_ = Matrix::Translate(tx, 0).Then(text_matrix_);
        }
      }
      FlushRun();
    } else if (op == "m") {
      if (!need_numbers(2)) return malformed();
      path_.push_back({});
      path_.back().points.push_back(gs.ctm.Apply(arg(2, 0), arg(2, 1)));
      current_ = {arg(2, 0), arg(2, 1)};
      start_ = current_;
    } else if (op == "l") {
      if (!need_numbers(2)) return malformed();
      if (path_.empty()) return malformed();
      current_ = {arg(2, 0), arg(2, 1)};
      path_.back().points.push_back(gs.ctm.Apply(current_.x, current_.y));
    } else if (op == "c" || op == "v" || op == "y") {
      size_t n = op == "c" ? 6 : 4;
      if (!need_numbers(n) || path_.empty()) return malformed();
      Point p0 = current_, p1, p2, p3;
      if (op == "c") {
        p1 = {arg(6, 0), arg(6, 1)};
        p2 = {arg(6, 2), arg(6, 3)};
        p3 = {arg(6, 4), arg(6, 5)};
      } else if (op == "v") {
        p1 = p0;
        p2 = {arg(4, 0), arg(4, 1)};
        p3 = {arg(4, 2), arg(4, 3)};
      } else {
        p1 = {arg(4, 0), arg(4, 1)};
        p2 = {arg(4, 2), arg(4, 3)};
        p3 = p2;
      }
      const int chords = std::max(1, options_.curve_chords);
      for (int i = 1; i <= chords; ++i) {
        double t = static_cast<double>(i) / chords, u = 1 - t;
        double x = u * u * u * p0.x + 3 * u * u * t * p1.x +
                   3 * u * t * t * p2.x + t * t * t * p3.x;
        double y = u * u * u * p0.y + 3 * u * u * t * p1.y +
                   3 * u * t * t * p2.y + t * t * t * p3.y;
        path_.back().points.push_back(gs.ctm.Apply(x, y));
      }
      current_ = p3;
    } else if (op == "h") {
      if (!path_.empty()) path_.back().closed = true;
      current_ = start_;
    } else if (op == "re") {
      if (!need_numbers(4)) return malformed();
      double x = arg(4, 0), y = arg(4, 1), w = arg(4, 2), h = arg(4, 3);
      Subpath sp;
      sp.points = {gs.ctm.Apply(x, y), gs.ctm.Apply(x + w, y),
                   gs.ctm.Apply(x + w, y + h), gs.ctm.Apply(x, y + h)};
      sp.closed = true;
      path_.push_back(std::move(sp));
      current_ = start_ = {x, y};
    } else if (op == "S" || op == "s") {
      if (op == "s" && !path_.empty()) path_.back().closed = true;
      Stroke();
      path_.clear();
    } else if (op == "f" || op == "F" || op == "f*") {
      Fill();
      path_.clear();
    } else if (op == "B" || op == "B*" || op == "b" || op == "b*") {
      if ((op == "b" || op == "b*") && !path_.empty()) {
        path_.back().closed = true;
      }
      Fill();
      Stroke();
      path_.clear();
    } else if (op == "n") {
      path_.clear();
    } else if (IgnoredOperators().count(op) > 0) {
      // Accepted, no geometric effect.
    } else {
      return false;
    }
    return true;
  }

  void MoveText(double tx, double ty) {
    line_matrix_ = Matrix::Translate(tx, ty).Then(line_matrix_);
    text_matrix_ = line_matrix_;
  }

  void ShowString(const std::string &bytes, int64_t offset) {
    const GraphicsState &gs = state_;
    if (gs.font == nullptr) {
      throw UnsupportedFont("(none selected)", offset);
    }
    for (unsigned char code : bytes) {
      Matrix m = text_matrix_.Then(gs.ctm);
      Point start = m.Apply(0, gs.rise);
      double glyph = gs.font->metrics->Width(code) / 1000.0 * gs.font_size;
      double tx = (glyph + gs.char_spacing + (code == 32 ? gs.word_spacing : 0)) *
                  gs.horizontal_scale;
      // Baseline end of the glyph itself, without trailing spacing.
      Point glyph_end = m.Apply(glyph * gs.horizontal_scale, gs.rise);
      text_matrix_ = Matrix::Translate(tx, 0).Then(text_matrix_);
      double size = gs.font_size * std::hypot(m.c, m.d);
      if (code == 32) {
        FlushRun();
        continue;
      }
      if (!run_text_.empty()) {
        double dx = run_end_.x - run_start_.x, dy = run_end_.y - run_start_.y;
        double len = std::hypot(dx, dy);
        double ux = len > 0 ? dx / len : 1, uy = len > 0 ? dy / len : 0;
        double gap = (start.x - run_end_.x) * ux + (start.y - run_end_.y) * uy;
        if (std::abs(gap) > options_.word_gap_ratio * run_size_) FlushRun();
      }
      if (run_text_.empty()) {
        run_start_ = start;
        run_size_ = size;
      }
      AppendWinAnsiAsUtf8(code, &run_text_);
      run_end_ = glyph_end;
    }
  }

  void FlushRun() {
    if (!run_text_.empty() && run_size_ > 0) {
      GlyphRun run;
      run.text = run_text_;
      run.origin = QuantizedPoint(run_start_);
      run.width = Quantize(Distance(run_start_, run_end_));
      run.font_size = Quantize(run_size_);
      run.baseline_y = run.origin.y;
      run.page_index = page_.page_index;
      if (run.font_size > 0) page_.glyph_runs.push_back(std::move(run));
    }
    run_text_.clear();
  }

  double StrokeWidth() const {
    const Matrix &m = state_.ctm;
    return Quantize(state_.line_width * std::sqrt(std::abs(m.a * m.d - m.b * m.c)));
  }

  void Stroke() {
    for (const Subpath &sp : path_) {
      std::vector<Point> pts = sp.points;
      if (sp.closed && pts.size() > 1) pts.push_back(pts.front());
      for (size_t i = 1; i < pts.size(); ++i) {
        Segment seg{QuantizedPoint(pts[i - 1]), QuantizedPoint(pts[i]),
                    StrokeWidth()};
        if (seg.p0 == seg.p1) continue;
        page_.segments.push_back(seg);
      }
    }
  }

  void Fill() {
    for (const Subpath &sp : path_) {
      std::vector<Point> verts;
      for (const Point &p : sp.points) {
        Point q = QuantizedPoint(p);
        if (verts.empty() || !(verts.back() == q)) verts.push_back(q);
      }
      while (verts.size() > 1 && verts.back() == verts.front()) {
        verts.pop_back();
      }
      if (verts.size() < 3 || PolygonArea(verts) <= 0) continue;
      page_.polygons.push_back(FilledPolygon{std::move(verts)});
    }
  }

  const FontMap &fonts_;
  ContentStats *stats_;
  InterpreterOptions options_;
  PageGeometry page_;

  GraphicsState state_;
  std::vector<GraphicsState> stack_;
  Matrix text_matrix_, line_matrix_;

  std::vector<Subpath> path_;
  Point current_, start_;  // user space

  std::string run_text_;
  Point run_start_, run_end_;
  double run_size_ = 0;
};

}  // namespace

PageGeometry InterpretContentStream(std::string_view stream,
                                    const FontMap &fonts,
                                    const BBox &media_box, int page_index,
                                    ContentStats *stats,
                                    const InterpreterOptions &options) {
  Interpreter interp(fonts, media_box, page_index, stats, options);
  return interp.Run(stream);
}

FontMap StandardFontMap(const std::map<std::string, std::string> &names) {
  FontMap map;
  for (const auto &[resource, base] : names) {
    map[resource] = FontResource{base, FindStandardFont(base), -1};
  }
  return map;
}

}  // namespace guidegraph::pdf
