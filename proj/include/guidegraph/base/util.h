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

// Small string, file and hashing helpers shared by all modules.

#ifndef GUIDEGRAPH_BASE_UTIL_H_
#define GUIDEGRAPH_BASE_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace guidegraph {

std::string AsciiLower(std::string_view s);

inline bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

// Word characters in the regular-expression sense: [A-Za-z0-9_].
inline bool IsWordChar(char c) { return IsAsciiAlnum(c) || c == '_'; }

std::vector<std::string> Split(std::string_view s, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);
std::string_view Trim(std::string_view s);

// Collapses runs of ASCII whitespace to one space and trims both ends.
std::string CollapseWhitespace(std::string_view s);

// Ordering that compares embedded digit runs numerically, so "p0-n2" sorts
// before "p0-n10".
bool NaturalLess(std::string_view a, std::string_view b);

struct NaturalOrder {
  bool operator()(std::string_view a, std::string_view b) const {
    return NaturalLess(a, b);
  }
};

// Throws IoError on failure.
std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Fixed three-decimal rendering used by the interchange formats. Negative
// zero renders as "0.000".
std::string FormatFixed3(double v);

// Rounds to the 1e-3 grid so that values survive a FormatFixed3 round trip
// bit-exactly.
double Quantize(double v);

}  // namespace guidegraph

#endif  // GUIDEGRAPH_BASE_UTIL_H_
