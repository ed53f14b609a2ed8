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

// Page layout analysis: glyph runs become text lines, lines become node
// blocks bounded by vertical separator rules, underlined headers become
// labels and small bottom-band text becomes footnotes.

#ifndef GUIDEGRAPH_LAYOUT_LAYOUT_H_
#define GUIDEGRAPH_LAYOUT_LAYOUT_H_

#include <optional>
#include <string>
#include <vector>

#include "guidegraph/base/error.h"
#include "guidegraph/base/geometry.h"
#include "guidegraph/pdf/geometry.h"

namespace guidegraph::layout {

// Every threshold below is a multiple of a font size unless it says pt.
struct LayoutConfig {
  double line_baseline_tolerance = 0.25;
  double line_join_gap = 1.0;  // widest horizontal gap inside a line
  double space_gap = 0.15;     // gap at which a space is inserted
  double superscript_min_rise = 0.25;
  double superscript_max_rise = 1.0;
  double superscript_max_size = 0.75;  // of the host line's size
  double separator_max_dx = 0.5;       // pt
  double separator_min_length = 6;     // pt
  double block_max_gap = 0.6;
  double block_min_overlap = 0.3;  // of the narrower line
  double label_max_gap = 4;        // pt between box bottom and underline
  double label_min_span = 0.9;     // underline coverage of the label width
  double label_min_overlap = 0.5;  // of the node width
  double footnote_band = 0.15;     // of the page height
  double footnote_max_size = 0.85;  // of the modal font size

  bool operator==(const LayoutConfig &) const = default;
};

struct Superscript {
  char marker = 0;
  int anchor_offset = 0;  // byte offset into the host line's text

  bool operator==(const Superscript &) const = default;
};

struct TextLine {
  std::string text;
  BBox bbox;
  double baseline_y = 0;
  double font_size = 0;  // largest member run
  int page_index = 0;
  std::vector<Superscript> superscripts;

  bool operator==(const TextLine &) const = default;
};

struct NodeBlock {
  std::string id;  // "p{page}-n{index}"
  int page_index = 0;
  BBox bbox;
  std::vector<std::string> lines;
  std::optional<std::string> label;
  std::vector<char> footnote_markers;  // first-appearance order, no repeats

  bool operator==(const NodeBlock &) const = default;
};

struct Footnote {
  char marker = 0;
  std::string text;
  int page_index = 0;

  bool operator==(const Footnote &) const = default;
};

struct LabelBlock {
  std::string text;
  BBox bbox;  // text box
  double x0 = 0, x1 = 0;  // horizontal extent including the underline
  int page_index = 0;

  bool operator==(const LabelBlock &) const = default;
};

class DuplicateMarker : public Error {
 public:
  DuplicateMarker(int page, char marker)
      : Error(ErrorCategory::kInput, "DuplicateMarker",
              "footnote marker '" + std::string(1, marker) + "' appears twice on page " +
                  std::to_string(page)),
        page_(page),
        marker_(marker) {}

  int page() const { return page_; }
  char marker() const { return marker_; }

 private:
  int page_;
  char marker_;
};

// Lines sorted top-to-bottom, then left-to-right.
std::vector<TextLine> GroupLines(const pdf::PageGeometry &page,
                                 const LayoutConfig &config = {});

std::vector<pdf::Segment> DetectSeparators(const pdf::PageGeometry &page,
                                           const LayoutConfig &config = {});

// Blocks come back in reading order with ids assigned by AssignNodeIds().
std::vector<NodeBlock> FormBlocks(const std::vector<TextLine> &lines,
                                  const std::vector<pdf::Segment> &separators,
                                  const LayoutConfig &config = {});

struct LabelResult {
  std::vector<LabelBlock> labels;
  std::vector<NodeBlock> nodes;  // label blocks removed, label field set
};

LabelResult DetectLabels(const pdf::PageGeometry &page,
                         const std::vector<NodeBlock> &blocks,
                         const LayoutConfig &config = {});

struct FootnoteResult {
  std::vector<Footnote> footnotes;
  std::vector<TextLine> remaining;  // lines that are not footnote text
  std::vector<char> duplicates;     // only filled when not strict
};

// With strict set a repeated marker raises DuplicateMarker; otherwise the
// first footnote wins and the repeat is reported in duplicates.
FootnoteResult DetectFootnotes(const pdf::PageGeometry &page,
                               const std::vector<TextLine> &lines,
                               const LayoutConfig &config = {}, bool strict = true);

// Sorts blocks top-to-bottom (by top edge), then left-to-right, and names
// them p{page}-n{k}.
void AssignNodeIds(std::vector<NodeBlock> &blocks);

// Modal font size weighted by character count; ties pick the larger size.
double ModalFontSize(const std::vector<TextLine> &lines);

}  // namespace guidegraph::layout

#endif  // GUIDEGRAPH_LAYOUT_LAYOUT_H_
