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

#include "qrep/cli/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "qrep/error.hpp"

namespace qrep::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Value {
  enum class Kind { kNumber, kWord, kBool, kList };
  Kind kind = Kind::kNumber;
  double number = 0.0;
  std::string word;
  bool flag = false;
  std::vector<double> list;
  int line = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  if (token == "inf" || token == "+inf") {
    out = kInf;
    return true;
  }
  if (token == "-inf") {
    out = -kInf;
    return true;
  }
  const char first = token[0];
  if (!(std::isdigit(static_cast<unsigned char>(first)) || first == '-' || first == '+' ||
        first == '.')) {
    return false;
  }
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size() && std::isfinite(out);
}

class Parser {
 public:
  Parser(std::string_view text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  std::map<std::string, Value> run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    int line = 0;
    std::string section;
    std::map<std::string, Value> values;
    while (std::getline(in, raw)) {
      ++line;
      const std::string stmt = trim(strip_comment(raw, line));
      if (stmt.empty()) continue;
      if (stmt.front() == '[') {
        if (stmt.back() != ']') fail(line, "unterminated section header");
        section = trim(std::string_view(stmt).substr(1, stmt.size() - 2));
        if (!known_section(section)) fail(line, "unknown section [" + section + "]");
        if (section_lines_.count(section)) fail(line, "duplicate section [" + section + "]");
        section_lines_[section] = line;
        continue;
      }
      const auto eq = stmt.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      const std::string key = trim(std::string_view(stmt).substr(0, eq));
      const std::string rhs = trim(std::string_view(stmt).substr(eq + 1));
      if (section.empty()) fail(line, "key '" + key + "' appears before any section");
      if (key.empty()) fail(line, "missing key");
      if (rhs.empty()) fail(line, section + "." + key + ": missing value");
      const std::string full = section + "." + key;
      if (values.count(full)) fail(line, full + ": duplicate key");
      Value v = parse_value(rhs, line, full);
      v.line = line;
      values.emplace(full, std::move(v));
    }
    return values;
  }

  const std::map<std::string, int>& section_lines() const { return section_lines_; }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw Error(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

 private:
  static bool known_section(const std::string& s) {
    return s == "hardware" || s == "network" || s == "protocol" || s == "memory" ||
           s == "purification" || s == "sim";
  }

  std::string strip_comment(const std::string& raw, int line) const {
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) return raw.substr(0, i);
    }
    if (quoted) fail(line, "unterminated string");
    return raw;
  }

  Value parse_value(const std::string& rhs, int line, const std::string& key) const {
    Value v;
    if (rhs.front() == '[') {
      if (rhs.back() != ']') fail(line, key + ": unterminated list");
      v.kind = Value::Kind::kList;
      const std::string body = trim(std::string_view(rhs).substr(1, rhs.size() - 2));
      if (body.empty()) return v;
      std::stringstream items(body);
      std::string item;
      while (std::getline(items, item, ',')) {
        double x = 0.0;
        if (!parse_number(trim(item), x)) fail(line, key + ": list item '" + trim(item) + "' is not a number");
        v.list.push_back(x);
      }
      return v;
    }
    if (rhs.front() == '"') {
      if (rhs.size() < 2 || rhs.back() != '"') fail(line, key + ": unterminated string");
      v.kind = Value::Kind::kWord;
      v.word = rhs.substr(1, rhs.size() - 2);
      return v;
    }
    if (rhs == "true" || rhs == "false") {
      v.kind = Value::Kind::kBool;
      v.flag = rhs == "true";
      return v;
    }
    if (parse_number(rhs, v.number)) return v;
    for (char c : rhs) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
        fail(line, key + ": cannot parse value '" + rhs + "'");
      }
    }
    v.kind = Value::Kind::kWord;
    v.word = rhs;
    return v;
  }

  std::string_view text_;
  std::string origin_;
  std::map<std::string, int> section_lines_;
};

// Typed access to the parsed key table with line-numbered errors.
class Reader {
 public:
  Reader(const Parser& parser, std::map<std::string, Value> values)
      : parser_(parser), values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  int line_of(const std::string& key) const {
    auto it = values_.find(key);
    if (it != values_.end()) return it->second.line;
    const std::string section = key.substr(0, key.find('.'));
    auto st = parser_.section_lines().find(section);
    return st != parser_.section_lines().end() ? st->second : 1;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    parser_.fail(line_of(key), key + ": " + msg);
  }

  double number(const std::string& key, double fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (it->kind != Value::Kind::kNumber) fail(key, "expected a number");
    return it->number;
  }

  double positive(const std::string& key, double fallback, bool allow_inf = false) {
    const double x = number(key, fallback);
    if (!(x > 0.0)) fail(key, "must be positive");
    if (!allow_inf && std::isinf(x)) fail(key, "must be finite");
    return x;
  }

  double non_negative(const std::string& key, double fallback, bool allow_inf = false) {
    const double x = number(key, fallback);
    if (!(x >= 0.0)) fail(key, "must be non-negative");
    if (!allow_inf && std::isinf(x)) fail(key, "must be finite");
    return x;
  }

  double probability(const std::string& key, double fallback, bool allow_one = true) {
    const double x = number(key, fallback);
    if (!(x >= 0.0 && (allow_one ? x <= 1.0 : x < 1.0))) {
      fail(key, allow_one ? "must lie in [0, 1]" : "must lie in [0, 1)");
    }
    return x;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback, std::uint64_t min) {
    const double x = number(key, static_cast<double>(fallback));
    if (!(std::isfinite(x) && std::floor(x) == x && x >= static_cast<double>(min) && x < 0x1p63)) {
      fail(key, "must be an integer >= " + std::to_string(min));
    }
    return static_cast<std::uint64_t>(x);
  }

  bool flag(const std::string& key, bool fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (it->kind != Value::Kind::kBool) fail(key, "expected true or false");
    return it->flag;
  }

  std::string word(const std::string& key, const std::string& fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (it->kind != Value::Kind::kWord) fail(key, "expected a word");
    return it->word;
  }

  std::optional<std::vector<double>> list(const std::string& key) {
    auto it = take(key);
    if (!it) return std::nullopt;
    if (it->kind != Value::Kind::kList) fail(key, "expected a list [a, b, ...]");
    return it->list;
  }

  std::optional<Value> take(const std::string& key) {
    consumed_.push_back(key);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void reject_unknown() const {
    for (const auto& [key, v] : values_) {
      bool known = false;
      for (const auto& c : consumed_) known = known || c == key;
      if (!known) parser_.fail(v.line, key + ": unknown key");
    }
  }

 private:
  const Parser& parser_;
  std::map<std::string, Value> values_;
  std::vector<std::string> consumed_;
};

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void resolve(Scenario& s) {
  using photonics::EmitterParams;
  const EmitterParams& b = s.bare_emitter;
  b.validate();
  require(s.purcell > 0.0, "hardware.purcell must be positive");
  s.chain.hardware.emitter =
      EmitterParams::from_rates(s.purcell * b.gamma_r, b.gamma_nr, b.t2_star);
  s.chain.hardware.indistinguishability =
      s.indistinguishability.value_or(photonics::indistinguishability(s.chain.hardware.emitter));
  s.chain.pulse.coupling_g = s.gt;
  s.chain.pulse.duration_t = 1.0;
}

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  Parser parser(text, origin);
  Reader r(parser, parser.run());
  Scenario s;
  engine::RepeaterChainConfig& c = s.chain;

  // hardware
  const bool has_t1 = r.has("hardware.t1_s");
  const bool has_gr = r.has("hardware.gamma_r_per_s");
  const double t1 = r.positive("hardware.t1_s", 1e-8);
  const double gamma_nr = r.non_negative("hardware.gamma_nr_per_s", 0.0);
  double gamma_r = r.positive("hardware.gamma_r_per_s", 1.0);
  const double t2star = r.positive("hardware.t2star_s", kInf, true);
  if (!has_gr) {
    gamma_r = 1.0 / t1 - gamma_nr;
    if (!(gamma_r > 0.0)) r.fail("hardware.gamma_nr_per_s", "must be below 1 / t1_s");
  }
  s.bare_emitter.t1_excited = (has_t1 || !has_gr) ? t1 : 1.0 / (gamma_r + gamma_nr);
  s.bare_emitter.gamma_r = gamma_r;
  s.bare_emitter.gamma_nr = gamma_nr;
  s.bare_emitter.t2_star = t2star;
  try {
    s.bare_emitter.validate();
  } catch (const Error& e) {
    r.fail(has_t1 ? "hardware.t1_s" : "hardware.gamma_r_per_s", e.what());
  }
  s.purcell = r.positive("hardware.purcell", 1.0);
  c.hardware.detector.efficiency = r.probability("hardware.eta_det", 1.0);
  c.hardware.detector.dark_count_prob_per_gate = r.probability("hardware.dark_count", 0.0, false);
  c.hardware.detector.number_resolving = r.flag("hardware.number_resolving", false);
  if (r.has("hardware.indistinguishability")) {
    s.indistinguishability = r.probability("hardware.indistinguishability", 1.0);
  } else {
    r.take("hardware.indistinguishability");
  }
  c.hardware.memory_in_efficiency = r.probability("hardware.eta_memory_in", 1.0);
  c.station.readout_efficiency = r.probability("hardware.swap_readout", 1.0);
  c.station.detector.efficiency = c.hardware.detector.efficiency;
  c.station.detector.dark_count_prob_per_gate = c.hardware.detector.dark_count_prob_per_gate;
  c.station.detector.number_resolving = r.flag("hardware.swap_number_resolving", true);

  // network
  auto segments = r.list("network.segments_km");
  if (!segments) r.fail("network.segments_km", "required key is missing");
  if (segments->empty()) r.fail("network.segments_km", "needs at least one segment");
  for (double len : *segments) {
    if (!(len >= 0.0)) r.fail("network.segments_km", "segment lengths must be non-negative");
  }
  c.segment_lengths_km = *segments;
  c.fiber.attenuation_db_per_km = r.non_negative("network.alpha_db_per_km", 0.2);
  c.fiber.speed_in_fiber = r.positive("network.c_fiber_m_per_s", 2.0e8);
  if (c.fiber.speed_in_fiber > photonics::kSpeedOfLightVacuum) {
    r.fail("network.c_fiber_m_per_s", "exceeds the vacuum speed of light");
  }

  // protocol
  const std::string scheme = r.word("protocol.scheme", "dlcz");
  if (scheme == "dlcz") {
    c.protocol = engine::Protocol::kDlcz;
  } else if (scheme == "single_emitter") {
    c.protocol = engine::Protocol::kSingleEmitter;
  } else {
    r.fail("protocol.scheme", "expected dlcz or single_emitter, got '" + scheme + "'");
  }
  s.gt = r.non_negative("protocol.gt", 0.1);
  c.pulse.p_max = r.probability("protocol.p_max", 0.1);
  if (s.gt * s.gt > c.pulse.p_max) r.fail("protocol.gt", "(gt)^2 exceeds protocol.p_max");
  c.pulse_overhead = r.non_negative("protocol.pulse_overhead_s", 0.0);
  c.cutoff = r.positive("protocol.cutoff_s", kInf, true);
  c.round_efficiency = r.probability("protocol.round_efficiency", 1.0);
  s.source_rate_hz = r.positive("protocol.source_rate_hz", 1e9);

  // memory
  c.memory.mode_capacity = r.count("memory.n_modes", 1, 1);
  c.memory.comb_spacing = r.positive("memory.comb_spacing_rad_per_s", c.memory.comb_spacing);
  c.memory.comb_bandwidth = r.positive("memory.comb_bandwidth_hz", 1e9);
  c.memory.write_efficiency = r.probability("memory.eta_write", 1.0);
  c.memory.recall_efficiency = r.probability("memory.eta_recall", 1.0);
  c.memory.spinwave_transfer_efficiency = r.probability("memory.eta_spinwave", 1.0);
  c.memory.spin_t2 = r.positive("memory.spin_t2_s", 1.0, true);

  // purification
  if (parser.section_lines().count("purification")) {
    const auto l = r.count("purification.l", 2, 2);
    const auto m = r.count("purification.m", 1, 1);
    const auto n = r.count("purification.levels", 0, 0);
    try {
      c.purification =
          repeater::PurificationPlan::make(static_cast<int>(l), static_cast<int>(m), static_cast<int>(n));
    } catch (const Error& e) {
      r.fail("purification.levels", e.what());
    }
    if (c.purification->total_links != c.segment_lengths_km.size()) {
      r.fail("purification.levels",
             "L^levels = " + std::to_string(c.purification->total_links) +
                 " does not match the " + std::to_string(c.segment_lengths_km.size()) +
                 " segments in network.segments_km");
    }
  }

  // sim
  s.sim.seed = r.count("sim.seed", 1, 0);
  s.sim.trials = static_cast<int>(r.count("sim.trials", 1, 1));
  s.sim.max_time = r.positive("sim.max_time_s", kInf, true);
  s.sim.max_pairs = r.count("sim.max_pairs", 1000, 0);
  if (std::isinf(s.sim.max_time) && s.sim.max_pairs == 0) {
    r.fail("sim.max_pairs", "needs a positive value when sim.max_time_s is infinite");
  }

  r.reject_unknown();
  try {
    resolve(s);
    c.validate();
  } catch (const Error& e) {
    parser.fail(1, std::string("invalid scenario: ") + e.what());
  }
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

std::string dump_scenario(const Scenario& s) {
  const engine::RepeaterChainConfig& c = s.chain;
  std::ostringstream o;
  o << "[hardware]\n";
  o << "t1_s = " << fmt(s.bare_emitter.t1_excited) << "\n";
  o << "t2star_s = " << fmt(s.bare_emitter.t2_star) << "\n";
  o << "gamma_r_per_s = " << fmt(s.bare_emitter.gamma_r) << "\n";
  o << "gamma_nr_per_s = " << fmt(s.bare_emitter.gamma_nr) << "\n";
  o << "purcell = " << fmt(s.purcell) << "\n";
  o << "eta_det = " << fmt(c.hardware.detector.efficiency) << "\n";
  o << "dark_count = " << fmt(c.hardware.detector.dark_count_prob_per_gate) << "\n";
  o << "number_resolving = " << (c.hardware.detector.number_resolving ? "true" : "false") << "\n";
  o << "indistinguishability = " << fmt(c.hardware.indistinguishability) << "\n";
  o << "eta_memory_in = " << fmt(c.hardware.memory_in_efficiency) << "\n";
  o << "swap_readout = " << fmt(c.station.readout_efficiency) << "\n";
  o << "swap_number_resolving = " << (c.station.detector.number_resolving ? "true" : "false")
    << "\n";
  o << "\n[network]\n";
  o << "segments_km = [";
  for (std::size_t i = 0; i < c.segment_lengths_km.size(); ++i) {
    o << (i ? ", " : "") << fmt(c.segment_lengths_km[i]);
  }
  o << "]\n";
  o << "alpha_db_per_km = " << fmt(c.fiber.attenuation_db_per_km) << "\n";
  o << "c_fiber_m_per_s = " << fmt(c.fiber.speed_in_fiber) << "\n";
  o << "\n[protocol]\n";
  o << "scheme = " << (c.protocol == engine::Protocol::kDlcz ? "dlcz" : "single_emitter") << "\n";
  o << "gt = " << fmt(s.gt) << "\n";
  o << "p_max = " << fmt(c.pulse.p_max) << "\n";
  o << "pulse_overhead_s = " << fmt(c.pulse_overhead) << "\n";
  o << "cutoff_s = " << fmt(c.cutoff) << "\n";
  o << "round_efficiency = " << fmt(c.round_efficiency) << "\n";
  o << "source_rate_hz = " << fmt(s.source_rate_hz) << "\n";
  o << "\n[memory]\n";
  o << "n_modes = " << c.memory.mode_capacity << "\n";
  o << "comb_spacing_rad_per_s = " << fmt(c.memory.comb_spacing) << "\n";
  o << "comb_bandwidth_hz = " << fmt(c.memory.comb_bandwidth) << "\n";
  o << "eta_write = " << fmt(c.memory.write_efficiency) << "\n";
  o << "eta_recall = " << fmt(c.memory.recall_efficiency) << "\n";
  o << "eta_spinwave = " << fmt(c.memory.spinwave_transfer_efficiency) << "\n";
  o << "spin_t2_s = " << fmt(c.memory.spin_t2) << "\n";
  if (c.purification) {
    o << "\n[purification]\n";
    o << "l = " << c.purification->branching_l << "\n";
    o << "m = " << c.purification->pairs_m << "\n";
    o << "levels = " << c.purification->levels_n << "\n";
  }
  o << "\n[sim]\n";
  o << "seed = " << s.sim.seed << "\n";
  o << "trials = " << s.sim.trials << "\n";
  o << "max_time_s = " << fmt(s.sim.max_time) << "\n";
  o << "max_pairs = " << s.sim.max_pairs << "\n";
  return o.str();
}

std::string fingerprint(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump_scenario(s)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qrep::cli
