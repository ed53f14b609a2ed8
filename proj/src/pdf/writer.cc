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

#include "guidegraph/pdf/writer.h"

#include <zlib.h>

#include <cstdio>

#include "guidegraph/base/error.h"
#include "guidegraph/base/util.h"

namespace guidegraph::pdf {

std::string FlateEncode(std::string_view data) {
  uLongf len = compressBound(static_cast<uLong>(data.size()));
  std::string out(len, '\0');
  int rc = compress2(reinterpret_cast<Bytef *>(out.data()), &len,
                     reinterpret_cast<const Bytef *>(data.data()),
                     static_cast<uLong>(data.size()), 9);
  if (rc != Z_OK) throw Error(ErrorCategory::kInternal, "CompressionFailed", "zlib");
  out.resize(len);
  return out;
}

std::string EscapePdfString(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '(' || c == ')' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

namespace {

std::string BoxArray(const BBox &b) {
  return "[" + FormatFixed3(b.x0) + " " + FormatFixed3(b.y0) + " " + FormatFixed3(b.x1) +
         " " + FormatFixed3(b.y1) + "]";
}

}  // namespace

std::string WritePdf(const std::vector<PdfPageSpec> &pages,
                     const PdfWriterOptions &options) {
  // Object numbering: 1 catalog, 2 page tree, then fonts, then per page the
  // page object, its content stream and its annotations.
  const int first_font = 3;
  const int first_page = first_font + static_cast<int>(options.fonts.size());
  std::vector<int> page_num(pages.size());
  int next = first_page;
  for (size_t i = 0; i < pages.size(); ++i) {
    page_num[i] = next;
    next += 2 + static_cast<int>(pages[i].links.size());
  }
  const int object_count = next - 1;

  std::string out = "%PDF-1.7\n%\xe2\xe3\xcf\xd3\n";
  std::vector<size_t> offsets(object_count + 1, 0);
  auto begin_obj = [&](int num) {
    offsets[num] = out.size();
    out += std::to_string(num) + " 0 obj\n";
  };

  begin_obj(1);
  out += "<< /Type /Catalog /Pages 2 0 R >>\nendobj\n";

  begin_obj(2);
  out += "<< /Type /Pages /Kids [";
  for (size_t i = 0; i < pages.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(page_num[i]) + " 0 R";
  }
  out += "] /Count " + std::to_string(pages.size()) + " /Resources << /Font <<";
  int font_num = first_font;
  for (const auto &[res, base] : options.fonts) {
    out += " /" + res + " " + std::to_string(font_num++) + " 0 R";
  }
  out += " >> >> >>\nendobj\n";

  font_num = first_font;
  for (const auto &[res, base] : options.fonts) {
    begin_obj(font_num++);
    out += "<< /Type /Font /Subtype /Type1 /BaseFont /" + base +
           " /Encoding /WinAnsiEncoding >>\nendobj\n";
  }

  for (size_t i = 0; i < pages.size(); ++i) {
    const PdfPageSpec &page = pages[i];
    int num = page_num[i];
    begin_obj(num);
    out += "<< /Type /Page /Parent 2 0 R /MediaBox " + BoxArray(page.media_box) +
           " /Contents " + std::to_string(num + 1) + " 0 R";
    if (!page.links.empty()) {
      out += " /Annots [";
      for (size_t k = 0; k < page.links.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(num + 2 + static_cast<int>(k)) + " 0 R";
      }
      out += "]";
    }
    out += " >>\nendobj\n";

    begin_obj(num + 1);
    std::string data = options.compress ? FlateEncode(page.content) : page.content;
    out += "<< /Length " + std::to_string(data.size());
    if (options.compress) out += " /Filter /FlateDecode";
    out += " >>\nstream\n" + data + "\nendstream\nendobj\n";

    for (size_t k = 0; k < page.links.size(); ++k) {
      const LinkAnnotation &link = page.links[k];
      begin_obj(num + 2 + static_cast<int>(k));
      int target = link.target_page;
      if (target < 0 || target >= static_cast<int>(pages.size())) {
        throw Error(ErrorCategory::kInternal, "BadLinkTarget",
                    "link to page " + std::to_string(target));
      }
      out += "<< /Type /Annot /Subtype /Link /Rect " + BoxArray(link.rect) +
             " /Border [0 0 0] /Dest [" + std::to_string(page_num[target]) +
             " 0 R /Fit] >>\nendobj\n";
    }
  }

  size_t xref_at = out.size();
  out += "xref\n0 " + std::to_string(object_count + 1) + "\n";
  out += "0000000000 65535 f \n";
  char line[32];
  for (int n = 1; n <= object_count; ++n) {
    std::snprintf(line, sizeof(line), "%010zu 00000 n \n", offsets[n]);
    out += line;
  }
  out += "trailer\n<< /Size " + std::to_string(object_count + 1) +
         " /Root 1 0 R >>\nstartxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
  return out;
}

}  // namespace guidegraph::pdf
