// Copyright 2026 The qrep Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrep::cli {

/// Runs one `qrep` invocation. `args` excludes the program name. Returns the
/// process exit status: 0 on success, nonzero exactly when a diagnostic was
/// written to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "a,b,c" and "a,b,...,z" (arithmetic progression) into numbers.
std::vector<double> parse_value_list(const std::string& text);

}  // namespace qrep::cli
