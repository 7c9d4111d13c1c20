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
#include <vector>

#include "qrep/generation.hpp"
#include "qrep/memory.hpp"
#include "qrep/repeater.hpp"

namespace qrep::engine {

enum class Protocol { kSingleEmitter, kDlcz };

struct RepeaterChainConfig {
  std::vector<double> segment_lengths_km;
  photonics::FiberParams fiber;
  /// Node hardware shared by every link; half_length_km is filled per link.
  generation::LinkHardware hardware;
  memory::AfcParams memory;
  Protocol protocol = Protocol::kDlcz;
  generation::EmissionPulse pulse = generation::EmissionPulse::from_probability(0.01);
  /// Per-round emission and collection efficiency of a single emitter.
  double round_efficiency = 1.0;
  repeater::SwapStation station;
  std::optional<repeater::PurificationPlan> purification;
  double cutoff = std::numeric_limits<double>::infinity();  // s
  double pulse_overhead = 0.0;                              // s

  std::size_t num_links() const { return segment_lengths_km.size(); }
  double total_length_km() const;
  /// Hardware of link i, with the fiber and half length applied.
  generation::LinkHardware link_hardware(std::size_t i) const;
  generation::HeraldResult link_herald(std::size_t i) const;
  double link_attempt_interval(std::size_t i) const;

  void validate() const;
};

struct StopCondition {
  double max_time = std::numeric_limits<double>::infinity();  // s
  std::uint64_t max_pairs = 0;                                // 0: no limit
};

struct RunStatistics {
  std::uint64_t delivered_pairs = 0;
  double elapsed = 0.0;  // s
  double rate = 0.0;     // pairs/s
  double fidelity_mean = 0.0;
  double fidelity_stddev = 0.0;
  /// Individual mode attempts, rounds times modes.
  std::uint64_t attempts_total = 0;
  std::vector<std::uint64_t> per_link_heralds;
  std::vector<std::uint64_t> per_link_rounds;
  /// Every mode that heralded, including those beyond the one a round keeps.
  std::vector<std::uint64_t> per_link_heralded_modes;
  /// Elementary pairs used up, whether delivered, failed or discarded.
  std::uint64_t resources_consumed = 0;
  std::uint64_t swap_attempts = 0;
  std::uint64_t swap_successes = 0;
  std::uint64_t purify_attempts = 0;
  std::uint64_t purify_successes = 0;
  std::uint64_t cutoff_discards = 0;
  double delivery_interval_mean = 0.0;    // s
  double delivery_interval_stderr = 0.0;  // s
  /// Running sums kept so trials can be pooled exactly.
  double fidelity_m2 = 0.0;
  double interval_m2 = 0.0;
};

/// Runs one seeded chain simulation. Deterministic in (config, seed, stop).
RunStatistics simulate(const RepeaterChainConfig& config, std::uint64_t seed,
                       const StopCondition& stop);

/// Combines independent runs as if they were one long run.
RunStatistics pool(const std::vector<RunStatistics>& runs);

/// No-repeater baseline: source_rate * fiber_transmission(total_km) * eta_d.
double direct_transmission_rate(double total_km, double source_rate,
                                const generation::LinkHardware& hw);

/// Round-synchronous model of a one- or two-link chain built from the
/// config, with the swap probability of two freshly stored pairs.
repeater::AnalyticLinkModel analytic_model(const RepeaterChainConfig& config);

}  // namespace qrep::engine
