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

#include "qrep/memory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrep/error.hpp"

namespace qrep::memory {
namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

AfcParams AfcParams::with_spacing_hz(double spacing_hz) {
  AfcParams a;
  a.comb_spacing = 2.0 * std::numbers::pi * spacing_hz;
  return a;
}

void AfcParams::validate() const {
  require(comb_spacing > 0.0, "afc: comb spacing must be positive");
  require(comb_bandwidth > 0.0, "afc: comb bandwidth must be positive");
  require(mode_capacity >= 1, "afc: mode capacity must be at least 1");
  require(is_probability(write_efficiency), "afc: write efficiency must lie in [0,1]");
  require(is_probability(recall_efficiency), "afc: recall efficiency must lie in [0,1]");
  require(is_probability(spinwave_transfer_efficiency),
          "afc: spin-wave transfer efficiency must lie in [0,1]");
  require(spin_t2 > 0.0, "afc: spin T2 must be positive");
}

double recall_time(const AfcParams& a) {
  require(a.comb_spacing > 0.0, "recall_time: comb spacing must be positive");
  return 2.0 * std::numbers::pi / a.comb_spacing;
}

double multiplex_gain(const AfcParams& a) {
  a.validate();
  return static_cast<double>(a.mode_capacity);
}

bool no_cloning_check(double efficiency, double fidelity) {
  return efficiency > 0.5 && fidelity > 2.0 / 3.0;
}

bool admits_bandwidth(const AfcParams& a, double photon_bandwidth_hz) {
  return photon_bandwidth_hz >= a.comb_spacing / (2.0 * std::numbers::pi) &&
         photon_bandwidth_hz <= a.comb_bandwidth;
}

AfcMemory::AfcMemory(AfcParams params) : params_(params) {
  params_.validate();
  slots_.resize(params_.mode_capacity);
}

bool AfcMemory::is_occupied(std::size_t mode_index) const {
  return mode_index < slots_.size() && slots_[mode_index].has_value();
}

StoreOutcome AfcMemory::store(const PairState& pair, double now,
                              std::optional<double> photon_bandwidth_hz) {
  if (photon_bandwidth_hz && !admits_bandwidth(params_, *photon_bandwidth_hz))
    return {StoreStatus::kBandwidthRejected, 0};
  if (occupied_ == slots_.size()) return {StoreStatus::kCapacityExhausted, 0};
  std::size_t index = 0;
  while (slots_[index]) ++index;

  double efficiency = params_.write_efficiency;
  if (params_.recall_mode == RecallMode::kOnDemand)
    efficiency *= params_.spinwave_transfer_efficiency;
  slots_[index] = StoredMode{attenuate(pair, efficiency), now, index};
  ++occupied_;
  return {StoreStatus::kStored, index};
}

PairState on_demand_readout(const PairState& pair, double stored_for, const AfcParams& a) {
  require(stored_for >= 0.0, "readout: storage time must be non-negative");
  return attenuate(decohere(pair, stored_for, a.spin_t2),
                   a.recall_efficiency * a.spinwave_transfer_efficiency);
}

PairState AfcMemory::retrieve(std::size_t mode_index, double now) {
  require(is_occupied(mode_index), "retrieve: mode is empty");
  const StoredMode& rec = *slots_[mode_index];
  double read_at = now;
  double efficiency = params_.recall_efficiency;
  if (params_.recall_mode == RecallMode::kFixedDelay) {
    read_at = rec.stored_at + recall_time(params_);
    require(now >= read_at - 1e-12 * std::abs(read_at),
            "retrieve: fixed-delay echo has not re-emitted yet");
  } else {
    require(now >= rec.stored_at, "retrieve: time precedes storage");
    efficiency *= params_.spinwave_transfer_efficiency;
  }
  PairState out = decohere(rec.pair, std::max(0.0, read_at - rec.stored_at), params_.spin_t2);
  out = attenuate(out, efficiency);
  slots_[mode_index].reset();
  --occupied_;
  return out;
}

const StoredMode& AfcMemory::peek(std::size_t mode_index) const {
  require(is_occupied(mode_index), "peek: mode is empty");
  return *slots_[mode_index];
}

void AfcMemory::discard(std::size_t mode_index) {
  require(is_occupied(mode_index), "discard: mode is empty");
  slots_[mode_index].reset();
  --occupied_;
}

}  // namespace qrep::memory
