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

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "qrep/engine.hpp"

namespace qrep::cli {

/// One emitted record. NaN marks an absent value (no swept parameter, or no
/// fidelity for the direct-transmission baseline).
struct ResultRow {
  double swept_value = std::numeric_limits<double>::quiet_NaN();
  std::string axis;
  int repeaters = 0;
  engine::RunStatistics stats;
  std::string fingerprint;
  /// Row describes direct transmission; rate comes from the formula.
  bool direct = false;
};

/// Column order of the CSV table.
const std::vector<std::string>& csv_columns();

/// %.9g, empty for NaN, inf/-inf spelled out.
std::string format_sig9(double x);

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);

/// Header plus one line per row, CRLF line endings.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// One JSON object per line, with every RunStatistics field.
void write_json_lines(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace qrep::cli
