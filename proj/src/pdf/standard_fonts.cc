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

#include "guidegraph/pdf/standard_fonts.h"

#include <cstdint>

namespace guidegraph::pdf {
namespace {

// Widths for codes 32..126, taken from the Adobe core font metrics.
constexpr std::array<short, 95> kHelvetica = {
    278, 278, 355, 556, 556, 889, 667, 191, 333,  333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556,  556, 556, 556, 278, 278,
    584, 584, 584, 556, 1015, 667, 667, 722, 722, 667, 611, 778, 722, 278,
    500, 667, 556, 833, 722, 778, 667, 778, 722,  667, 611, 722, 667, 944,
    667, 667, 611, 278, 278, 278, 469, 556, 333,  556, 556, 500, 556, 556,
    278, 556, 556, 222, 222, 500, 222, 833, 556,  556, 556, 556, 333, 500,
    278, 556, 500, 722, 500, 500, 500, 334, 260,  334, 584};

constexpr std::array<short, 95> kHelveticaBold = {
    278, 333, 474, 556, 556, 889, 722, 238, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 333, 333,
    584, 584, 584, 611, 975, 722, 722, 722, 722, 667, 611, 778, 722, 278,
    556, 722, 611, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 333, 278, 333, 584, 556, 333, 556, 611, 556, 611, 556,
    333, 611, 611, 278, 278, 556, 278, 889, 611, 611, 611, 611, 389, 556,
    333, 611, 556, 778, 556, 556, 500, 389, 280, 389, 584};

constexpr std::array<short, 95> kTimesRoman = {
    250, 333, 408, 500, 500, 833, 778, 180, 333, 333, 500, 564, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 278, 278,
    564, 564, 564, 444, 921, 722, 667, 667, 722, 611, 556, 722, 722, 333,
    389, 722, 611, 889, 722, 722, 556, 722, 667, 556, 611, 722, 722, 944,
    722, 722, 611, 333, 278, 333, 469, 500, 333, 444, 500, 444, 500, 444,
    333, 500, 500, 278, 278, 500, 278, 778, 500, 500, 500, 500, 333, 389,
    278, 500, 500, 722, 500, 500, 444, 480, 200, 480, 541};

constexpr std::array<short, 95> kTimesBold = {
    250, 333, 555, 500, 500, 1000, 833, 278, 333, 333, 500,  570, 250, 333,
    250, 278, 500, 500, 500, 500,  500, 500, 500, 500, 500,  500, 333, 333,
    570, 570, 570, 500, 930, 722,  667, 722, 722, 667, 611,  778, 778, 389,
    500, 778, 667, 944, 722, 778,  611, 778, 722, 556, 667,  722, 722, 1000,
    722, 722, 667, 333, 278, 333,  581, 500, 333, 500, 556,  444, 556, 444,
    333, 500, 556, 278, 333, 556,  278, 833, 556, 500, 556,  556, 444, 389,
    333, 556, 500, 722, 500, 500,  444, 394, 220, 394, 520};

constexpr std::array<short, 95> kTimesItalic = {
    250, 333, 420, 500, 500, 833, 778, 214, 333, 333, 500, 675, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 333, 333,
    675, 675, 675, 500, 920, 611, 611, 667, 722, 611, 611, 722, 722, 333,
    444, 667, 556, 833, 667, 722, 611, 722, 611, 500, 556, 722, 611, 833,
    611, 556, 556, 389, 278, 389, 422, 500, 333, 500, 500, 444, 500, 444,
    278, 500, 500, 278, 278, 444, 278, 722, 500, 500, 500, 500, 389, 389,
    278, 500, 444, 667, 444, 444, 389, 400, 275, 400, 541};

constexpr std::array<short, 95> kTimesBoldItalic = {
    250, 389, 555, 500, 500, 833, 778, 278, 333, 333, 500, 570, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 333, 333,
    570, 570, 570, 500, 832, 667, 667, 667, 722, 667, 667, 722, 778, 389,
    500, 667, 611, 889, 722, 722, 611, 722, 667, 556, 611, 722, 667, 889,
    667, 611, 611, 333, 278, 333, 570, 500, 333, 500, 500, 444, 500, 444,
    333, 500, 556, 278, 278, 500, 278, 778, 556, 500, 500, 500, 389, 389,
    278, 556, 444, 667, 500, 444, 389, 348, 220, 348, 570};

constexpr std::array<short, 95> kSymbol = {
    250, 333, 713, 500, 549, 833, 778, 439, 333, 333, 500, 549, 250, 549,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 278, 278,
    549, 549, 549, 444, 549, 722, 667, 722, 612, 611, 763, 603, 722, 333,
    631, 722, 686, 889, 722, 722, 768, 741, 556, 592, 611, 690, 439, 768,
    645, 795, 611, 333, 863, 333, 658, 500, 500, 631, 549, 549, 494, 439,
    521, 411, 603, 329, 603, 549, 549, 576, 521, 549, 549, 521, 549, 603,
    439, 576, 713, 686, 493, 686, 494, 480, 200, 480, 549};

constexpr std::array<short, 95> kZapfDingbats = {
    278, 974, 961, 974, 980, 719, 789, 790, 791, 690, 960, 939, 549, 855,
    911, 933, 911, 945, 974, 755, 846, 762, 761, 571, 677, 763, 760, 759,
    754, 494, 552, 537, 577, 692, 786, 788, 788, 790, 793, 794, 816, 823,
    789, 841, 823, 833, 816, 831, 923, 744, 723, 749, 790, 792, 695, 776,
    768, 792, 759, 707, 708, 682, 701, 826, 815, 789, 789, 707, 687, 696,
    689, 786, 787, 713, 791, 785, 791, 873, 761, 762, 762, 759, 759, 892,
    892, 788, 784, 438, 138, 277, 415, 392, 392, 668, 668};

constexpr std::array<short, 95> Monospace() {
  std::array<short, 95> w{};
  for (auto &x : w) x = 600;
  return w;
}

constexpr std::array<short, 7> kHelveticaPunct = {556, 1000, 350, 222,
                                                  222, 333,  333};
constexpr std::array<short, 7> kHelveticaBoldPunct = {556, 1000, 350, 278,
                                                      278, 500,  500};
constexpr std::array<short, 7> kTimesPunct = {500, 1000, 350, 333,
                                              333, 444,  444};
constexpr std::array<short, 7> kTimesBoldPunct = {500, 1000, 350, 333,
                                                  333, 500,  500};
constexpr std::array<short, 7> kTimesItalicPunct = {500, 889, 350, 333,
                                                    333, 556, 556};
constexpr std::array<short, 7> kCourierPunct = {600, 600, 600, 600,
                                                600, 600, 600};
constexpr std::array<short, 7> kNoPunct = {500, 500, 500, 500, 500, 500, 500};

const std::vector<FontMetrics> &AllFonts() {
  static const std::vector<FontMetrics> *fonts = new std::vector<FontMetrics>{
      {"Helvetica", kHelvetica, kHelveticaPunct},
      {"Helvetica-Oblique", kHelvetica, kHelveticaPunct},
      {"Helvetica-Bold", kHelveticaBold, kHelveticaBoldPunct},
      {"Helvetica-BoldOblique", kHelveticaBold, kHelveticaBoldPunct},
      {"Times-Roman", kTimesRoman, kTimesPunct},
      {"Times-Bold", kTimesBold, kTimesBoldPunct},
      {"Times-Italic", kTimesItalic, kTimesItalicPunct},
      {"Times-BoldItalic", kTimesBoldItalic, kTimesBoldPunct},
      {"Courier", Monospace(), kCourierPunct},
      {"Courier-Bold", Monospace(), kCourierPunct},
      {"Courier-Oblique", Monospace(), kCourierPunct},
      {"Courier-BoldOblique", Monospace(), kCourierPunct},
      {"Symbol", kSymbol, kNoPunct},
      {"ZapfDingbats", kZapfDingbats, kNoPunct},
  };
  return *fonts;
}

void AppendCodepoint(uint32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode for WinAnsi 0x80..0x9F; zero marks undefined codes.
constexpr uint16_t kWinAnsiHigh[32] = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

}  // namespace

int FontMetrics::Width(unsigned char code) const {
  if (code >= 32 && code <= 126) return ascii_[code - 32];
  switch (code) {
    case 0x96: return punctuation_[0];
    case 0x97: return punctuation_[1];
    case 0x95: return punctuation_[2];
    case 0x91: return punctuation_[3];
    case 0x92: return punctuation_[4];
    case 0x93: return punctuation_[5];
    case 0x94: return punctuation_[6];
    case 0xA0: return ascii_[0];  // no-break space
    default: break;
  }
  // Accented Latin-1 letters: approximate with the width of 'o'.
  return ascii_['o' - 32];
}

double FontMetrics::TextWidth(std::string_view text, double font_size) const {
  int total = 0;
  for (char c : text) total += Width(static_cast<unsigned char>(c));
  return total / 1000.0 * font_size;
}

const FontMetrics *FindStandardFont(std::string_view base_font) {
  for (const FontMetrics &f : AllFonts()) {
    if (f.name() == base_font) return &f;
  }
  return nullptr;
}

const std::vector<std::string> &StandardFontNames() {
  static const std::vector<std::string> *names = [] {
    auto *v = new std::vector<std::string>;
    for (const FontMetrics &f : AllFonts()) v->push_back(f.name());
    return v;
  }();
  return *names;
}

void AppendWinAnsiAsUtf8(unsigned char code, std::string *out) {
  if (code < 32) return;
  if (code < 0x80) {
    out->push_back(static_cast<char>(code));
  } else if (code < 0xA0) {
    uint32_t cp = kWinAnsiHigh[code - 0x80];
    AppendCodepoint(cp == 0 ? 0xFFFD : cp, out);
  } else {
    AppendCodepoint(code, out);
  }
}

}  // namespace guidegraph::pdf
