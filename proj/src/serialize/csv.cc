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

#include "guidegraph/serialize/csv.h"

#include <algorithm>

#include "guidegraph/base/error.h"
#include "guidegraph/base/util.h"

namespace guidegraph::serialize {

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

CsvExport ExportCsv(const graph::GuidelineGraph &input) {
  graph::GuidelineGraph g = input;
  graph::Canonicalize(g);
  CsvExport out;
  out.nodes = "id,page,label,content,node_class\r\n";
  for (const graph::NodeBlock &n : g.nodes) {
    std::string cls;
    auto it = g.annotations.find(n.id);
    if (it != g.annotations.end() && it->second.node_class) {
      cls = graph::NodeClassName(*it->second.node_class);
    }
    out.nodes += CsvField(n.id) + "," + std::to_string(n.page_index) + "," +
                 CsvField(n.label.value_or("")) + "," + CsvField(graph::JoinedContent(n)) + "," +
                 CsvField(cls) + "\r\n";
  }
  out.edges = "from,to,kind\r\n";
  for (const graph::Edge &e : g.edges) {
    out.edges += CsvField(e.from_id) + "," + CsvField(e.to_id) + "," +
                 graph::EdgeKindName(e.kind) + "\r\n";
  }
  return out;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, in_quotes = false, any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty() && !quoted) {
      in_quotes = quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      quoted = false;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
      row.clear();
      field.clear();
      quoted = any = false;
    } else {
      field += c;
    }
  }
  if (in_quotes) throw Error(ErrorCategory::kInput, "MalformedCsv", "unterminated quote");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace guidegraph::serialize
