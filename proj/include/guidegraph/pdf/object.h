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

// PDF object model and the tokenizer/parser shared by the file reader and
// the content-stream interpreter.

#ifndef GUIDEGRAPH_PDF_OBJECT_H_
#define GUIDEGRAPH_PDF_OBJECT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace guidegraph::pdf {

class PdfObject;
using PdfArray = std::vector<PdfObject>;
using PdfDict = std::map<std::string, PdfObject>;

struct PdfName {
  std::string value;
};

struct PdfString {
  std::string bytes;
};

struct PdfRef {
  int num = 0;
  int gen = 0;
};

struct PdfStream {
  std::shared_ptr<const PdfDict> dict;
  std::string raw;     // still filter-encoded
  int64_t offset = 0;  // of the first data byte
};

// Bare keyword inside a content stream, e.g. "Tj" or "re".
struct PdfOperator {
  std::string keyword;
};

class PdfObject {
 public:
  using Value =
      std::variant<std::monostate, bool, int64_t, double, PdfName, PdfString,
                   std::shared_ptr<const PdfArray>,
                   std::shared_ptr<const PdfDict>, PdfRef,
                   std::shared_ptr<const PdfStream>, PdfOperator>;

  PdfObject() = default;
  explicit PdfObject(Value v) : value_(std::move(v)) {}

  static PdfObject Array(PdfArray a) {
    return PdfObject(std::make_shared<const PdfArray>(std::move(a)));
  }
  static PdfObject Dict(PdfDict d) {
    return PdfObject(std::make_shared<const PdfDict>(std::move(d)));
  }

  bool IsNull() const { return std::holds_alternative<std::monostate>(value_); }
  bool IsBool() const { return std::holds_alternative<bool>(value_); }
  bool IsInt() const { return std::holds_alternative<int64_t>(value_); }
  bool IsNumber() const {
    return IsInt() || std::holds_alternative<double>(value_);
  }
  bool IsName() const { return std::holds_alternative<PdfName>(value_); }
  bool IsString() const { return std::holds_alternative<PdfString>(value_); }
  bool IsArray() const {
    return std::holds_alternative<std::shared_ptr<const PdfArray>>(value_);
  }
  bool IsDict() const {
    return std::holds_alternative<std::shared_ptr<const PdfDict>>(value_);
  }
  bool IsRef() const { return std::holds_alternative<PdfRef>(value_); }
  bool IsStream() const {
    return std::holds_alternative<std::shared_ptr<const PdfStream>>(value_);
  }
  bool IsOperator() const {
    return std::holds_alternative<PdfOperator>(value_);
  }

  // Accessors throw MalformedObject on type mismatch.
  bool AsBool() const;
  int64_t AsInt() const;
  double AsNumber() const;
  const std::string &AsName() const;
  const std::string &AsString() const;
  const PdfArray &AsArray() const;
  const PdfDict &AsDict() const;
  PdfRef AsRef() const;
  const PdfStream &AsStream() const;
  const std::string &AsOperator() const;

  // Dictionary lookup (also works on streams); nullptr when absent or when
  // this is not a dictionary.
  const PdfObject *Find(const std::string &key) const;

  const Value &value() const { return value_; }

 private:
  Value value_;
};

// Tokenizing parser over a byte buffer. Positions are offsets into the
// buffer, plus `base_offset` when reporting errors.
class PdfParser {
 public:
  // Resolves an indirect /Length for streams.
  using LengthResolver = std::function<std::optional<int64_t>(PdfRef)>;

  explicit PdfParser(std::string_view data, int64_t base_offset = 0)
      : data_(data), base_offset_(base_offset) {}

  size_t pos() const { return pos_; }
  void set_pos(size_t pos) { pos_ = pos; }
  bool AtEnd();
  int64_t offset() const { return base_offset_ + static_cast<int64_t>(pos_); }

  // Parses one object. In content mode, bare keywords come back as
  // PdfOperator values instead of raising errors.
  PdfObject ParseObject(bool content_mode = false);

  // Parses "num gen obj ... endobj" at the current position, including a
  // trailing stream.
  PdfObject ParseIndirectObject(int expected_num,
                                const LengthResolver &resolve_length);

  // Skips an inline image body after the BI operands; leaves the position
  // after EI.
  void SkipInlineImage();

  // Reads a keyword token; empty when the next token is not a keyword.
  std::string ReadKeyword();

  void SkipWhitespaceAndComments();

 private:
  PdfObject ParseNumberOrRef(bool content_mode);
  PdfObject ParseLiteralString();
  PdfObject ParseHexString();
  PdfObject ParseName();
  PdfObject ParseArray(bool content_mode);
  PdfObject ParseDictOrStream(bool content_mode);
  std::string ReadRegularRun();
  [[noreturn]] void Fail(const std::string &message) const;

  std::string_view data_;
  int64_t base_offset_;
  size_t pos_ = 0;
};

bool IsPdfWhitespace(char c);
bool IsPdfDelimiter(char c);

}  // namespace guidegraph::pdf

#endif  // GUIDEGRAPH_PDF_OBJECT_H_
