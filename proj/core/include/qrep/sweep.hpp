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
#include <string>
#include <string_view>
#include <vector>

#include "qrep/engine.hpp"

namespace qrep::engine {

enum class SweepAxis { kTotalKm, kEmissionProb, kModes, kSpinT2, kCutoff, kLinks };

/// Accepts total_km, p, n_modes, t2, cutoff, links.
SweepAxis parse_axis(std::string_view name);
std::string axis_name(SweepAxis axis);

/// Copy of `base` with one parameter replaced. total_km keeps the number of
/// links and splits the length evenly; links keeps the total length.
RepeaterChainConfig apply_axis(const RepeaterChainConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  RepeaterChainConfig config;
  RunStatistics stats;  // pooled over trials
};

/// Runs `trials` independent simulations per value. Trial t of value v uses
/// derive_seed(seed, v * 2^32 + t). Trials run on up to `workers` threads
/// (0 picks the hardware concurrency); results do not depend on it.
std::vector<SweepRow> sweep(const RepeaterChainConfig& base, std::string_view axis,
                            const std::vector<double>& values, std::uint64_t seed, int trials,
                            const StopCondition& stop, unsigned workers = 0);

/// The same trial scheme for a single configuration.
RunStatistics run_trials(const RepeaterChainConfig& config, std::uint64_t seed, int trials,
                         const StopCondition& stop, unsigned workers = 0);

}  // namespace qrep::engine
