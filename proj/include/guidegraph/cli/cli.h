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

// Command-line front end. One subcommand per pipeline stage:
//   extract, enrich, train, classify, synth, eval, export-csv.

#ifndef GUIDEGRAPH_CLI_CLI_H_
#define GUIDEGRAPH_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "guidegraph/base/error.h"

namespace guidegraph::cli {

enum ExitCode { kOk = 0, kInputError = 1, kUnsupportedError = 2, kInternalError = 3 };

ExitCode ExitCodeFor(ErrorCategory category);

// `args` excludes the program name. Data goes to files or `out`, logs and
// diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace guidegraph::cli

#endif  // GUIDEGRAPH_CLI_CLI_H_
