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

#include "qrep/cli/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace qrep::cli {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "swept_value", "repeaters", "rate_hz",   "fidelity_mean", "fidelity_stddev",
      "delivered",   "elapsed_s", "resources", "fingerprint"};
  return cols;
}

std::string format_sig9(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::vector<std::string> csv_fields(const ResultRow& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const bool scored = !r.direct && r.stats.delivered_pairs > 0;
  return {format_sig9(r.swept_value),
          std::to_string(r.repeaters),
          format_sig9(r.stats.rate),
          format_sig9(scored ? r.stats.fidelity_mean : nan),
          format_sig9(scored ? r.stats.fidelity_stddev : nan),
          std::to_string(r.stats.delivered_pairs),
          format_sig9(r.stats.elapsed),
          std::to_string(r.stats.resources_consumed),
          r.fingerprint};
}

// NaN and infinities have no JSON spelling; they become null.
nlohmann::ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
  out << "\r\n";
  for (const ResultRow& r : rows) {
    const auto fields = csv_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
    out << "\r\n";
  }
}

void write_json_lines(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const ResultRow& r : rows) {
    const engine::RunStatistics& s = r.stats;
    const bool scored = !r.direct && s.delivered_pairs > 0;
    nlohmann::ordered_json j;
    j["swept_value"] = number(r.swept_value);
    j["axis"] = r.axis;
    j["repeaters"] = r.repeaters;
    j["rate_hz"] = number(s.rate);
    j["fidelity_mean"] = scored ? number(s.fidelity_mean) : nullptr;
    j["fidelity_stddev"] = scored ? number(s.fidelity_stddev) : nullptr;
    j["delivered"] = s.delivered_pairs;
    j["elapsed_s"] = number(s.elapsed);
    j["resources"] = s.resources_consumed;
    j["fingerprint"] = r.fingerprint;
    j["direct"] = r.direct;
    j["attempts_total"] = s.attempts_total;
    j["per_link_heralds"] = s.per_link_heralds;
    j["per_link_rounds"] = s.per_link_rounds;
    j["per_link_heralded_modes"] = s.per_link_heralded_modes;
    j["swap_attempts"] = s.swap_attempts;
    j["swap_successes"] = s.swap_successes;
    j["purify_attempts"] = s.purify_attempts;
    j["purify_successes"] = s.purify_successes;
    j["cutoff_discards"] = s.cutoff_discards;
    j["delivery_interval_mean_s"] = number(s.delivery_interval_mean);
    j["delivery_interval_stderr_s"] = number(s.delivery_interval_stderr);
    out << j.dump() << "\n";
  }
}

}  // namespace qrep::cli
