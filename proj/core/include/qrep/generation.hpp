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

#include <optional>

#include "qrep/pair_state.hpp"
#include "qrep/photonics.hpp"

namespace qrep::generation {

using photonics::DetectorParams;
using photonics::EmitterParams;
using photonics::FiberParams;

/// Weak Raman write pulse. Emission probability p = (g t)^2, capped at p_max
/// because the truncated expansion is only trusted for small g t.
struct EmissionPulse {
  double coupling_g = 0.0;  // 1/s
  double duration_t = 0.0;  // s
  double p_max = 0.1;

  static EmissionPulse from_probability(double p, double p_max = 0.1);

  double emission_prob() const { return (coupling_g * duration_t) * (coupling_g * duration_t); }
  void validate() const;
};

/// Everything one elementary link needs. Each node sends its photon over
/// half_length_km of fiber to a midpoint beamsplitter station.
struct LinkHardware {
  EmitterParams emitter;
  DetectorParams detector;
  FiberParams fiber;
  double half_length_km = 0.0;
  double memory_in_efficiency = 1.0;
  double indistinguishability = 1.0;

  /// Survival from the emitter to the midpoint station, before the detectors.
  double arm_transmission() const;
  void validate() const;
};

struct HeraldResult {
  /// Probability that exactly one of the two midpoint detectors fires.
  double success_prob = 0.0;
  /// Conditional state for the detector-1 pattern; detector 2 gives the same
  /// weights with the opposite sign.
  PairState heralded;
};

struct HeraldOutcome {
  bool success = false;
  std::optional<PairState> pair;
  double attempt_duration = 0.0;
};

/// Conditional factors for the "detector 1 fires, detector 2 does not"
/// pattern behind a balanced beamsplitter, given per-mode survival `eta`
/// (transmission times detector efficiency):
///   none      - no photon entered either input
///   single    - one photon entered one input (incoherent weight)
///   coherent  - cross term between "photon from input a" and "photon from input b"
///   pair      - one photon entered each input (Hong-Ou-Mandel bunching)
/// For number-resolving detectors, a pattern means "exactly one count on
/// detector 1 and none on detector 2".
struct SingleClickFactors {
  double none = 0.0;
  double single = 0.0;
  double coherent = 0.0;
  double pair = 0.0;
};

SingleClickFactors single_click_factors(double eta, const DetectorParams& det);

/// q = p * arm transmission * detector efficiency.
double dlcz_arm_click_prob(const EmissionPulse& pulse, const LinkHardware& hw);

/// Two ensembles, each in sqrt(1-p)|0,0> + sqrt(p)|1,1> (ensemble, Stokes
/// photon), heralded by a single midpoint click. Double emission that still
/// yields a single click lands in w_vac.
HeraldResult dlcz_herald(const EmissionPulse& pulse, const LinkHardware& hw);

/// Two-round single-emitter protocol: herald, flip both qubits, herald again.
/// `round_efficiency` is the per-round photon emission and collection
/// efficiency of each node. success_prob is the joint probability that both
/// rounds produce a single click.
HeraldResult single_emitter_herald(const LinkHardware& hw, double round_efficiency);

/// Herald round trip 2 * half_length / c_fiber plus a fixed overhead.
double attempt_interval(const LinkHardware& hw, double pulse_overhead);

/// Resolves one attempt against a uniform variate in [0,1).
HeraldOutcome resolve_attempt(const HeraldResult& herald, double uniform, double duration);

}  // namespace qrep::generation
