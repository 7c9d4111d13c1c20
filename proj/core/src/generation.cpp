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

#include "qrep/generation.hpp"

#include <algorithm>
#include <cmath>

#include "qrep/error.hpp"

namespace qrep::generation {
namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

// P(pattern | n1 photons on detector 1, n2 on detector 2) for the
// "detector 1 only" pattern.
double pattern_weight(int n1, int n2, const DetectorParams& det) {
  const double d = det.dark_count_prob_per_gate;
  if (n2 > 0) return 0.0;
  const double quiet_2 = 1.0 - d;
  if (det.number_resolving) {
    if (n1 == 0) return d * quiet_2;
    if (n1 == 1) return (1.0 - d) * quiet_2;
    return 0.0;
  }
  return (n1 > 0 ? 1.0 : d) * quiet_2;
}

PairState heralded_state(double single_sector, double total, double coherence) {
  if (!(total > 0.0)) return PairState::make(0.0, 0.0);
  const double w = std::min(1.0, single_sector / total);
  return PairState::make(w, std::min(1.0, coherence));
}

}  // namespace

EmissionPulse EmissionPulse::from_probability(double p, double p_max) {
  require(p >= 0.0, "emission pulse: probability must be non-negative");
  EmissionPulse pulse;
  pulse.coupling_g = std::sqrt(p);
  pulse.duration_t = 1.0;
  pulse.p_max = p_max;
  pulse.validate();
  return pulse;
}

void EmissionPulse::validate() const {
  require(coupling_g >= 0.0 && duration_t >= 0.0,
          "emission pulse: coupling and duration must be non-negative");
  require(p_max > 0.0 && p_max <= 1.0, "emission pulse: p_max must lie in (0,1]");
  require(emission_prob() <= p_max * (1.0 + 1e-12),
          "emission pulse: (g t)^2 exceeds the p_max cap");
}

double LinkHardware::arm_transmission() const {
  return photonics::fiber_transmission(half_length_km, fiber) * memory_in_efficiency;
}

void LinkHardware::validate() const {
  emitter.validate();
  detector.validate();
  fiber.validate();
  require(half_length_km >= 0.0, "link hardware: half_length_km must be non-negative");
  require(is_probability(memory_in_efficiency),
          "link hardware: memory_in_efficiency must lie in [0,1]");
  require(is_probability(indistinguishability),
          "link hardware: indistinguishability must lie in [0,1]");
}

SingleClickFactors single_click_factors(double eta, const DetectorParams& det) {
  require(is_probability(eta), "single_click_factors: survival must lie in [0,1]");
  auto g = [&det](int n1, int n2) { return pattern_weight(n1, n2, det); };
  SingleClickFactors f;
  f.none = g(0, 0);
  f.single = 0.5 * eta * (g(1, 0) + g(0, 1)) + (1.0 - eta) * g(0, 0);
  f.coherent = 0.5 * eta * g(1, 0);
  f.pair = 0.5 * eta * eta * (g(2, 0) + g(0, 2)) + eta * (1.0 - eta) * (g(1, 0) + g(0, 1)) +
           (1.0 - eta) * (1.0 - eta) * g(0, 0);
  return f;
}

double dlcz_arm_click_prob(const EmissionPulse& pulse, const LinkHardware& hw) {
  pulse.validate();
  return pulse.emission_prob() * hw.arm_transmission() * hw.detector.efficiency;
}

HeraldResult dlcz_herald(const EmissionPulse& pulse, const LinkHardware& hw) {
  pulse.validate();
  hw.validate();
  const double p = pulse.emission_prob();
  const double eta = hw.arm_transmission() * hw.detector.efficiency;
  const SingleClickFactors f = single_click_factors(eta, hw.detector);

  const double vacuum = (1.0 - p) * (1.0 - p) * f.none;
  const double single = p * (1.0 - p) * f.single;  // each of |10>, |01>
  const double cross = p * (1.0 - p) * f.coherent;
  const double doubled = p * p * f.pair;
  const double pattern = vacuum + 2.0 * single + doubled;

  HeraldResult r;
  r.success_prob = 2.0 * pattern;
  const double coherence = single > 0.0 ? cross / single : 0.0;
  r.heralded = heralded_state(2.0 * single, pattern, coherence * hw.indistinguishability);
  return r;
}

HeraldResult single_emitter_herald(const LinkHardware& hw, double round_efficiency) {
  hw.validate();
  require(is_probability(round_efficiency),
          "single_emitter_herald: round efficiency must lie in [0,1]");
  const double eta = round_efficiency * hw.arm_transmission() * hw.detector.efficiency;
  const SingleClickFactors f = single_click_factors(eta, hw.detector);

  // Each qubit starts in (|up> + |down>)/sqrt(2) and only |down> emits, so a
  // round behaves like a pair source with emission probability 1/2. After the
  // flip, |up up> and |down down> swap roles; only the single-excitation
  // sector emits exactly one photon in both rounds.
  const double single = 0.25 * f.single * f.single;  // each of |up down>, |down up>
  const double cross = 0.25 * f.coherent * f.coherent;
  const double wrong = 0.25 * (f.none * f.pair + f.pair * f.none);
  const double pattern = 2.0 * single + wrong;

  HeraldResult r;
  r.success_prob = 4.0 * pattern;
  const double coherence = single > 0.0 ? cross / single : 0.0;
  r.heralded = heralded_state(2.0 * single, pattern, coherence * hw.indistinguishability);
  return r;
}

double attempt_interval(const LinkHardware& hw, double pulse_overhead) {
  require(pulse_overhead >= 0.0, "attempt_interval: overhead must be non-negative");
  return photonics::communication_time(2.0 * hw.half_length_km * 1000.0, hw.fiber) +
         pulse_overhead;
}

HeraldOutcome resolve_attempt(const HeraldResult& herald, double uniform, double duration) {
  HeraldOutcome out;
  out.attempt_duration = duration;
  out.success = uniform < herald.success_prob;
  if (out.success) out.pair = herald.heralded;
  return out;
}

}  // namespace qrep::generation
