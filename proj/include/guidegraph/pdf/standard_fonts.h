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

// Advance widths of the 14 standard Type 1 fonts, WinAnsi encoding.

#ifndef GUIDEGRAPH_PDF_STANDARD_FONTS_H_
#define GUIDEGRAPH_PDF_STANDARD_FONTS_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace guidegraph::pdf {

class FontMetrics {
 public:
  FontMetrics(std::string name, const std::array<short, 95> &ascii,
              std::array<short, 7> punctuation)
      : name_(std::move(name)), ascii_(ascii), punctuation_(punctuation) {}

  const std::string &name() const { return name_; }

  // Width in 1/1000 em of the glyph for WinAnsi code `code`.
  int Width(unsigned char code) const;

  // Advance of `text` (WinAnsi bytes) at `font_size`, ignoring spacing
  // operators.
  double TextWidth(std::string_view text, double font_size) const;

 private:
  std::string name_;
  std::array<short, 95> ascii_;  // codes 32..126
  // endash, emdash, bullet, quoteleft, quoteright, quotedblleft,
  // quotedblright
  std::array<short, 7> punctuation_;
};

// Returns nullptr when `base_font` is not one of the standard 14 names.
const FontMetrics *FindStandardFont(std::string_view base_font);

const std::vector<std::string> &StandardFontNames();

// Appends the UTF-8 form of WinAnsi code `code` to `out`.
void AppendWinAnsiAsUtf8(unsigned char code, std::string *out);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_STANDARD_FONTS_H_
