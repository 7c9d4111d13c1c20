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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "qrep/engine.hpp"

namespace qrep::cli {

struct SimSettings {
  std::uint64_t seed = 1;
  int trials = 1;
  double max_time = std::numeric_limits<double>::infinity();  // s
  std::uint64_t max_pairs = 1000;

  engine::StopCondition stop() const { return {max_time, max_pairs}; }
};

/// A resolved scenario: the chain plus the inputs it was derived from, kept
/// so the canonical dump can echo them.
struct Scenario {
  engine::RepeaterChainConfig chain;
  /// Emitter before cavity enhancement; chain.hardware.emitter is after it.
  photonics::EmitterParams bare_emitter = photonics::EmitterParams::from_lifetime(1e-8);
  double purcell = 1.0;
  /// Explicit photon indistinguishability; derived from the emitter when unset.
  std::optional<double> indistinguishability;
  double gt = 0.1;
  double source_rate_hz = 1e9;
  SimSettings sim;
};

/// Scenario grammar, one statement per line:
///
///   # comment
///   [section]
///   key = value
///
/// Values are numbers (`inf` where an infinite value is allowed), bare words,
/// double-quoted strings, `true` / `false`, or `[v1, v2, ...]` number lists.
/// Every error carries "<origin>:<line>:".
Scenario parse_scenario_text(std::string_view text, const std::string& origin = "<scenario>");
Scenario parse_scenario(const std::string& path);

/// Canonical text with every key, defaults included; parsing it back gives
/// the same scenario.
std::string dump_scenario(const Scenario& s);

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string fingerprint(const Scenario& s);

/// Rebuilds chain.hardware.emitter, the pulse and the derived defaults after
/// one of the source fields changed.
void resolve(Scenario& s);

}  // namespace qrep::cli
