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
#include <memory>
#include <string>
#include <vector>

#include "qrep/pair_state.hpp"
#include "qrep/photonics.hpp"

namespace qrep::repeater {

/// Midpoint Bell-state measurement between two memories. The inner memories
/// are read out into photons with `readout_efficiency`, mixed on a balanced
/// beamsplitter and detected. The default detector resolves photon number, so
/// with lossless readout two photons are never mistaken for one.
struct SwapStation {
  double readout_efficiency = 1.0;
  photonics::DetectorParams detector{1.0, 0.0, true};
  /// Indistinguishability of the retrieved photons; multiplies the output
  /// coherence.
  double interference = 1.0;

  void validate() const;
};

struct SwapResult {
  double herald_prob = 0.0;
  PairState out;
};

/// Entanglement swap of left = (A,B) and right = (C,D) into (A,D), conditioned
/// on a single count at the station. False heralds put weight into w_vac.
SwapResult swap(const PairState& left, const PairState& right, const SwapStation& station);

/// Repeatedly swaps a state with an identical copy of itself and returns the
/// state after each of the `swap_count` levels.
std::vector<PairState> vacuum_ratio_decay(const PairState& initial, int swap_count,
                                          const SwapStation& station);

struct PurifyResult {
  double success_prob = 0.0;
  PairState out;
};

/// Two-to-one distillation step acting on the two-component pair state.
class PurificationMap {
 public:
  virtual ~PurificationMap() = default;
  virtual PurifyResult apply(const PairState& a, const PairState& b) const = 0;
  virtual std::string name() const = 0;
};

/// Keeps the pair only when both inputs were in their single-excitation
/// sector: success a.w_ent * b.w_ent, output w_vac = 0,
/// coherence a.coherence * b.coherence, sign taken from a.
class VacuumFilteringMap final : public PurificationMap {
 public:
  PurifyResult apply(const PairState& a, const PairState& b) const override;
  std::string name() const override { return "vacuum_filtering"; }
};

/// Default purification: VacuumFilteringMap.
PurifyResult purify(const PairState& a, const PairState& b);

/// Nested connect-and-purify plan: L links are joined per level, M raw pairs
/// are distilled into one, n levels cover N = L^n links.
struct PurificationPlan {
  int branching_l = 2;
  int pairs_m = 1;
  int levels_n = 0;
  std::uint64_t total_links = 1;

  static PurificationPlan make(int l, int m, int n);
  void validate() const;
};

/// R = (L M)^n elementary pairs per end-to-end pair. Throws on 64-bit overflow.
std::uint64_t resource_count(const PurificationPlan& plan);

/// R = N^(log_L M + 1) in floating point.
double resource_count_polynomial(const PurificationPlan& plan);

struct AnalyticLinkModel {
  double success_prob_per_attempt = 1.0;  // per mode
  double attempt_interval = 1.0;          // s
  std::size_t mode_capacity = 1;
  double swap_success_prob = 1.0;
  double cutoff = std::numeric_limits<double>::infinity();  // s

  void validate() const;
  /// 1 - (1 - p)^N.
  double round_success_prob() const;
};

/// Expected time to deliver one end-to-end pair over one or two identical
/// links, from exact enumeration of the round-synchronous Markov chain:
/// empty links retry every round; a held pair ages one round per round and
/// is discarded at the end of the round in which its age exceeds the cutoff;
/// when both links hold valid pairs the swap fires, and a failed swap sends
/// both links back to empty. Enumeration stops once the unresolved
/// probability mass drops below 1e-12.
double expected_chain_time(const AnalyticLinkModel& model, int num_links);

}  // namespace qrep::repeater
