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

#include <cstddef>
#include <optional>
#include <vector>

#include "qrep/pair_state.hpp"

namespace qrep::memory {

enum class RecallMode {
  /// Optical echo only: the excitation re-emits exactly recall_time after
  /// absorption.
  kFixedDelay,
  /// Transfer to a spin level and back, so recall can happen at any time.
  /// The spin-wave transfer efficiency is paid on the way in and out.
  kOnDemand,
};

/// Atomic-frequency-comb memory parameters. comb_spacing is angular
/// (rad/s), so the echo appears at T = 2 pi / comb_spacing.
struct AfcParams {
  double comb_spacing = 2.0 * 3.14159265358979323846 * 1e6;  // rad/s
  double comb_bandwidth = 1e9;                                // Hz
  std::size_t mode_capacity = 1;
  double write_efficiency = 1.0;
  double recall_efficiency = 1.0;
  double spinwave_transfer_efficiency = 1.0;
  double spin_t2 = 1.0;  // s, may be +infinity
  RecallMode recall_mode = RecallMode::kOnDemand;

  /// Convenience constructor taking the tooth spacing in Hz.
  static AfcParams with_spacing_hz(double spacing_hz);

  void validate() const;
};

struct StoredMode {
  PairState pair;
  double stored_at = 0.0;
  std::size_t mode_index = 0;
};

enum class StoreStatus { kStored, kCapacityExhausted, kBandwidthRejected };

struct StoreOutcome {
  StoreStatus status = StoreStatus::kStored;
  std::size_t mode_index = 0;

  bool accepted() const { return status == StoreStatus::kStored; }
};

/// T = 2 pi / comb_spacing.
double recall_time(const AfcParams& a);

/// Factor N by which temporal multiplexing raises the attempt rate.
double multiplex_gain(const AfcParams& a);

/// Efficiency above 1/2 and fidelity above 2/3, both strict.
bool no_cloning_check(double efficiency, double fidelity);

/// True when comb_spacing / (2 pi) <= bandwidth <= comb_bandwidth.
bool admits_bandwidth(const AfcParams& a, double photon_bandwidth_hz);

/// Spin dephasing for `stored_for` seconds followed by on-demand recall loss
/// (recall times spin-wave transfer). The pair-level effect of reading out a
/// stored half.
PairState on_demand_readout(const PairState& pair, double stored_for, const AfcParams& a);

/// Multimode memory with a fixed number of temporal slots. Single owner; not
/// thread-safe.
class AfcMemory {
 public:
  explicit AfcMemory(AfcParams params);

  const AfcParams& params() const { return params_; }
  std::size_t occupied() const { return occupied_; }
  std::size_t capacity() const { return params_.mode_capacity; }
  bool is_occupied(std::size_t mode_index) const;

  /// Writes a pair into the lowest free mode. Storage loss moves entangled
  /// weight into the vacuum component. When a photon bandwidth is given it
  /// must fit the comb.
  StoreOutcome store(const PairState& pair, double now,
                     std::optional<double> photon_bandwidth_hz = std::nullopt);

  /// Reads a mode out and frees it. Applies spin dephasing for the storage
  /// time and the recall loss. In fixed-delay mode the read happens at
  /// stored_at + recall_time regardless of `now`, and `now` must not precede it.
  PairState retrieve(std::size_t mode_index, double now);

  /// The stored record, without touching it.
  const StoredMode& peek(std::size_t mode_index) const;

  /// Frees a mode without reading it (cutoff discard).
  void discard(std::size_t mode_index);

 private:
  AfcParams params_;
  std::vector<std::optional<StoredMode>> slots_;
  std::size_t occupied_ = 0;
};

}  // namespace qrep::memory
