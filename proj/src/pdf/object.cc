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

#include "guidegraph/pdf/object.h"

#include <charconv>
#include <cstdlib>

#include "guidegraph/pdf/errors.h"

namespace guidegraph::pdf {

bool IsPdfWhitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' ||
         c == '\0';
}

bool IsPdfDelimiter(char c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

namespace {

[[noreturn]] void TypeMismatch(const char *wanted) {
  throw MalformedObject(std::string("expected ") + wanted, -1);
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool ParseInt(std::string_view s, int64_t *out) {
  if (s.empty()) return false;
  size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::string_view digits = s.substr(s[0] == '+' ? 1 : 0);
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), *out);
  return res.ec == std::errc();
}

bool LooksNumeric(std::string_view s) {
  bool digit = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (!(c == '.' || ((c == '+' || c == '-') && i == 0))) {
      return false;
    }
  }
  return digit;
}

}  // namespace

bool PdfObject::AsBool() const {
  if (!IsBool()) TypeMismatch("boolean");
  return std::get<bool>(value_);
}

int64_t PdfObject::AsInt() const {
  if (IsInt()) return std::get<int64_t>(value_);
  if (std::holds_alternative<double>(value_)) {
    return static_cast<int64_t>(std::get<double>(value_));
  }
  TypeMismatch("integer");
}

double PdfObject::AsNumber() const {
  if (IsInt()) return static_cast<double>(std::get<int64_t>(value_));
  if (std::holds_alternative<double>(value_)) return std::get<double>(value_);
  TypeMismatch("number");
}

const std::string &PdfObject::AsName() const {
  if (!IsName()) TypeMismatch("name");
  return std::get<PdfName>(value_).value;
}

const std::string &PdfObject::AsString() const {
  if (!IsString()) TypeMismatch("string");
  return std::get<PdfString>(value_).bytes;
}

const PdfArray &PdfObject::AsArray() const {
  if (!IsArray()) TypeMismatch("array");
  return *std::get<std::shared_ptr<const PdfArray>>(value_);
}

const PdfDict &PdfObject::AsDict() const {
  if (IsStream()) return *AsStream().dict;
  if (!IsDict()) TypeMismatch("dictionary");
  return *std::get<std::shared_ptr<const PdfDict>>(value_);
}

PdfRef PdfObject::AsRef() const {
  if (!IsRef()) TypeMismatch("indirect reference");
  return std::get<PdfRef>(value_);
}

const PdfStream &PdfObject::AsStream() const {
  if (!IsStream()) TypeMismatch("stream");
  return *std::get<std::shared_ptr<const PdfStream>>(value_);
}

const std::string &PdfObject::AsOperator() const {
  if (!IsOperator()) TypeMismatch("operator");
  return std::get<PdfOperator>(value_).keyword;
}

const PdfObject *PdfObject::Find(const std::string &key) const {
  const PdfDict *dict = nullptr;
  if (IsDict()) {
    dict = std::get<std::shared_ptr<const PdfDict>>(value_).get();
  } else if (IsStream()) {
    dict = AsStream().dict.get();
  }
  if (dict == nullptr) return nullptr;
  auto it = dict->find(key);
  return it == dict->end() ? nullptr : &it->second;
}

void PdfParser::Fail(const std::string &message) const {
  throw MalformedObject(message, offset());
}

void PdfParser::SkipWhitespaceAndComments() {
  while (pos_ < data_.size()) {
    char c = data_[pos_];
    if (IsPdfWhitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r')
        ++pos_;
    } else {
      break;
    }
  }
}

bool PdfParser::AtEnd() {
  SkipWhitespaceAndComments();
  return pos_ >= data_.size();
}

std::string PdfParser::ReadRegularRun() {
  size_t start = pos_;
  while (pos_ < data_.size() && !IsPdfWhitespace(data_[pos_]) &&
         !IsPdfDelimiter(data_[pos_])) {
    ++pos_;
  }
  return std::string(data_.substr(start, pos_ - start));
}

std::string PdfParser::ReadKeyword() {
  SkipWhitespaceAndComments();
  size_t save = pos_;
  std::string word = ReadRegularRun();
  if (word.empty() || LooksNumeric(word)) {
    pos_ = save;
    return {};
  }
  return word;
}

PdfObject PdfParser::ParseObject(bool content_mode) {
  SkipWhitespaceAndComments();
  if (pos_ >= data_.size()) Fail("unexpected end of data");
  char c = data_[pos_];
  switch (c) {
    case '(':
      return ParseLiteralString();
    case '/':
      return ParseName();
    case '[':
      return ParseArray(content_mode);
    case '<':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
        return ParseDictOrStream(content_mode);
      }
      return ParseHexString();
    case '{':
    case '}':
      // PostScript calculator braces; only legal in function streams.
      ++pos_;
      if (content_mode) return PdfObject(PdfOperator{std::string(1, c)});
      Fail("unexpected brace");
    case ')':
    case '>':
    case ']':
      Fail(std::string("unexpected '") + c + "'");
    default:
      break;
  }
  if ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.') {
    return ParseNumberOrRef(content_mode);
  }
  std::string word = ReadRegularRun();
  if (word.empty()) Fail("unexpected byte");
  if (word == "true") return PdfObject(true);
  if (word == "false") return PdfObject(false);
  if (word == "null") return PdfObject();
  if (content_mode) return PdfObject(PdfOperator{word});
  Fail("unexpected keyword '" + word + "'");
}

PdfObject PdfParser::ParseNumberOrRef(bool content_mode) {
  size_t start = pos_;
  std::string word = ReadRegularRun();
  int64_t first = 0;
  if (ParseInt(word, &first)) {
    if (!content_mode && first >= 0) {
      // Look ahead for "gen R".
      size_t save = pos_;
      SkipWhitespaceAndComments();
      std::string second = ReadRegularRun();
      int64_t gen = 0;
      if (ParseInt(second, &gen) && gen >= 0) {
        SkipWhitespaceAndComments();
        std::string third = ReadRegularRun();
        if (third == "R") {
          return PdfObject(
              PdfRef{static_cast<int>(first), static_cast<int>(gen)});
        }
      }
      pos_ = save;
    }
    return PdfObject(first);
  }
  if (!LooksNumeric(word)) {
    pos_ = start;
    Fail("malformed number '" + word + "'");
  }
  // Reals such as "-.5" or "3."; strtod handles both.
  std::string buf(word);
  return PdfObject(std::strtod(buf.c_str(), nullptr));
}

PdfObject PdfParser::ParseLiteralString() {
  ++pos_;  // '('
  std::string out;
  int depth = 1;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '\\') {
      if (pos_ >= data_.size()) break;
      char e = data_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '(': case ')': case '\\': out += e; break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int v = e - '0';
            for (int k = 0; k < 2 && pos_ < data_.size() &&
                            data_[pos_] >= '0' && data_[pos_] <= '7';
                 ++k) {
              v = v * 8 + (data_[pos_++] - '0');
            }
            out += static_cast<char>(v & 0xFF);
          } else {
            out += e;  // unknown escape: keep the character
          }
      }
    } else if (c == '(') {
      ++depth;
      out += c;
    } else if (c == ')') {
      if (--depth == 0) return PdfObject(PdfString{out});
      out += c;
    } else {
      out += c;
    }
  }
  Fail("unterminated string");
}

PdfObject PdfParser::ParseHexString() {
  ++pos_;  // '<'
  std::string out;
  int pending = -1;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '>') {
      if (pending >= 0) out += static_cast<char>(pending << 4);
      return PdfObject(PdfString{out});
    }
    if (IsPdfWhitespace(c)) continue;
    int v = HexValue(c);
    if (v < 0) Fail("bad hex digit in string");
    if (pending < 0) {
      pending = v;
    } else {
      out += static_cast<char>((pending << 4) | v);
      pending = -1;
    }
  }
  Fail("unterminated hex string");
}

PdfObject PdfParser::ParseName() {
  ++pos_;  // '/'
  std::string raw = ReadRegularRun();
  std::string name;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '#' && i + 2 < raw.size() && HexValue(raw[i + 1]) >= 0 &&
        HexValue(raw[i + 2]) >= 0) {
      name += static_cast<char>(HexValue(raw[i + 1]) * 16 +
                                HexValue(raw[i + 2]));
      i += 2;
    } else {
      name += raw[i];
    }
  }
  return PdfObject(PdfName{name});
}

PdfObject PdfParser::ParseArray(bool content_mode) {
  ++pos_;  // '['
  PdfArray items;
  while (true) {
    SkipWhitespaceAndComments();
    if (pos_ >= data_.size()) Fail("unterminated array");
    if (data_[pos_] == ']') {
      ++pos_;
      return PdfObject::Array(std::move(items));
    }
    items.push_back(ParseObject(content_mode));
  }
}

PdfObject PdfParser::ParseDictOrStream(bool content_mode) {
  pos_ += 2;  // '<<'
  PdfDict dict;
  while (true) {
    SkipWhitespaceAndComments();
    if (pos_ + 1 < data_.size() && data_[pos_] == '>' &&
        data_[pos_ + 1] == '>') {
      pos_ += 2;
      break;
    }
    if (pos_ >= data_.size()) Fail("unterminated dictionary");
    PdfObject key = ParseObject(content_mode);
    if (!key.IsName()) Fail("dictionary key is not a name");
    PdfObject value = ParseObject(content_mode);
    dict[key.AsName()] = std::move(value);
  }
  return PdfObject::Dict(std::move(dict));
}

PdfObject PdfParser::ParseIndirectObject(int expected_num,
                                         const LengthResolver &resolve_length) {
  SkipWhitespaceAndComments();
  int64_t header_offset = offset();
  std::string num_tok = ReadRegularRun();
  SkipWhitespaceAndComments();
  std::string gen_tok = ReadRegularRun();
  std::string obj_kw = ReadKeyword();
  int64_t num = 0, gen = 0;
  if (!ParseInt(num_tok, &num) || !ParseInt(gen_tok, &gen) || obj_kw != "obj") {
    throw BrokenXref("no object header where the xref table points",
                     header_offset);
  }
  if (num != expected_num) {
    throw BrokenXref("object " + std::to_string(num) + " found where " +
                         std::to_string(expected_num) + " was expected",
                     header_offset);
  }
  PdfObject obj = ParseObject();
  size_t after_obj = pos_;
  std::string kw = ReadKeyword();
  if (kw == "stream" && obj.IsDict()) {
    // The keyword is followed by CRLF or LF.
    if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
    if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
    size_t data_start = pos_;
    std::optional<int64_t> length;
    if (const PdfObject *len = obj.Find("Length")) {
      if (len->IsInt()) {
        length = len->AsInt();
      } else if (len->IsRef() && resolve_length) {
        length = resolve_length(len->AsRef());
      }
    }
    size_t data_end = std::string_view::npos;
    if (length && *length >= 0 &&
        data_start + static_cast<size_t>(*length) <= data_.size()) {
      size_t candidate = data_start + static_cast<size_t>(*length);
      PdfParser probe(data_, base_offset_);
      probe.set_pos(candidate);
      if (probe.ReadKeyword() == "endstream") data_end = candidate;
    }
    if (data_end == std::string_view::npos) {
      // Bad or missing /Length: fall back to scanning for the keyword.
      size_t found = data_.find("endstream", data_start);
      if (found == std::string_view::npos) Fail("unterminated stream");
      data_end = found;
      while (data_end > data_start &&
             (data_[data_end - 1] == '\n' || data_[data_end - 1] == '\r')) {
        --data_end;
      }
    }
    auto stream = std::make_shared<PdfStream>();
    stream->dict = std::get<std::shared_ptr<const PdfDict>>(obj.value());
    stream->raw = std::string(data_.substr(data_start, data_end - data_start));
    stream->offset = base_offset_ + static_cast<int64_t>(data_start);
    pos_ = data_end;
    if (ReadKeyword() != "endstream") Fail("missing endstream");
    ReadKeyword();  // endobj, tolerated when absent
    return PdfObject(std::shared_ptr<const PdfStream>(std::move(stream)));
  }
  if (kw != "endobj") pos_ = after_obj;
  return obj;
}

void PdfParser::SkipInlineImage() {
  // Operands (key/value pairs) up to ID.
  while (true) {
    SkipWhitespaceAndComments();
    if (pos_ >= data_.size()) Fail("unterminated inline image");
    size_t save = pos_;
    std::string kw = ReadKeyword();
    if (kw == "ID") break;
    pos_ = save;
    ParseObject(true);
  }
  if (pos_ < data_.size()) ++pos_;  // single whitespace after ID
  while (pos_ + 1 < data_.size()) {
    if (data_[pos_] == 'E' && data_[pos_ + 1] == 'I' &&
        (pos_ == 0 || IsPdfWhitespace(data_[pos_ - 1])) &&
        (pos_ + 2 >= data_.size() || IsPdfWhitespace(data_[pos_ + 2]))) {
      pos_ += 2;
      return;
    }
    ++pos_;
  }
  Fail("inline image without EI");
}

}  // namespace guidegraph::pdf
