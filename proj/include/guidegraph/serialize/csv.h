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

// Neutral CSV export for graph-database import (RFC 4180, CRLF line ends).

#ifndef GUIDEGRAPH_SERIALIZE_CSV_H_
#define GUIDEGRAPH_SERIALIZE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "guidegraph/graph/graph.h"

namespace guidegraph::serialize {

struct CsvExport {
  std::string nodes;  // id,page,label,content,node_class
  std::string edges;  // from,to,kind
};

CsvExport ExportCsv(const graph::GuidelineGraph &g);

// Quotes the field when it holds a comma, quote, CR or LF.
std::string CsvField(std::string_view field);

// Parses RFC 4180 text into rows; used by tests and tooling.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace guidegraph::serialize

#endif  // GUIDEGRAPH_SERIALIZE_CSV_H_
