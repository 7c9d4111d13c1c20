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

#include "qrep/photonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qrep/error.hpp"

namespace qrep::photonics {
namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

EmitterParams EmitterParams::from_lifetime(double t1, double branching_ratio,
                                           double t2_star) {
  require(t1 > 0.0 && std::isfinite(t1), "emitter: t1_excited must be positive and finite");
  require(is_probability(branching_ratio), "emitter: branching ratio must lie in [0,1]");
  EmitterParams p;
  p.t1_excited = t1;
  p.t2_star = t2_star;
  p.gamma_r = branching_ratio / t1;
  p.gamma_nr = (1.0 - branching_ratio) / t1;
  p.validate();
  return p;
}

EmitterParams EmitterParams::from_rates(double gamma_r, double gamma_nr,
                                        double t2_star) {
  require(gamma_r >= 0.0 && gamma_nr >= 0.0, "emitter: decay rates must be non-negative");
  EmitterParams p;
  p.gamma_r = gamma_r;
  p.gamma_nr = gamma_nr;
  const double gamma = gamma_r + gamma_nr;
  p.t1_excited = gamma > 0.0 ? 1.0 / gamma : kInf;
  p.t2_star = t2_star;
  p.validate();
  return p;
}

void EmitterParams::validate() const {
  require(t1_excited >= 0.0, "emitter: t1_excited must be non-negative");
  require(t2_star >= 0.0, "emitter: t2_star must be non-negative");
  require(gamma_r >= 0.0, "emitter: gamma_r must be non-negative");
  require(gamma_nr >= 0.0, "emitter: gamma_nr must be non-negative");
  if (t1_excited > 0.0 && std::isfinite(t1_excited)) {
    const double expected = 1.0 / t1_excited;
    const double gamma = gamma_r + gamma_nr;
    require(std::abs(gamma - expected) <= 1e-9 * expected,
            "emitter: gamma_r + gamma_nr must equal 1/t1_excited");
  }
}

void CavityParams::validate() const {
  require(wavelength_in_medium > 0.0, "cavity: wavelength must be positive");
  require(mode_volume > 0.0, "cavity: mode volume must be positive");
  require(quality_factor >= 0.0, "cavity: quality factor must be non-negative");
}

void FiberParams::validate() const {
  require(attenuation_db_per_km >= 0.0, "fiber: attenuation must be non-negative");
  require(speed_in_fiber > 0.0 && speed_in_fiber <= kSpeedOfLightVacuum,
          "fiber: speed must lie in (0, c]");
}

void DetectorParams::validate() const {
  require(is_probability(efficiency), "detector: efficiency must lie in [0,1]");
  require(is_probability(dark_count_prob_per_gate),
          "detector: dark count probability must lie in [0,1]");
}

double total_decay_rate(const EmitterParams& p) { return p.gamma_r + p.gamma_nr; }

double dephasing_rate(const EmitterParams& p) {
  if (std::isinf(p.t2_star)) return 0.0;
  require(p.t2_star > 0.0, "emitter: t2_star must be positive to define a dephasing rate");
  return 2.0 / p.t2_star;
}

double photon_coherence_time(const EmitterParams& p) {
  require(p.t1_excited > 0.0, "photon_coherence_time: t1_excited must be positive");
  if (p.t2_star == 0.0) return 0.0;
  const double inv = 1.0 / (2.0 * p.t1_excited) + 1.0 / p.t2_star;
  return 1.0 / inv;
}

double indistinguishability(double gamma, double gamma_star) {
  require(gamma >= 0.0 && gamma_star >= 0.0,
          "indistinguishability: rates must be non-negative");
  require(gamma + gamma_star > 0.0,
          "indistinguishability: undefined for gamma = gamma_star = 0");
  if (std::isinf(gamma_star)) return 0.0;
  return gamma / (gamma + gamma_star);
}

double indistinguishability(const EmitterParams& p) {
  return indistinguishability(total_decay_rate(p), dephasing_rate(p));
}

double hom_coincidence_probability(double indist) {
  require(is_probability(indist), "hom_coincidence_probability: I must lie in [0,1]");
  return 0.5 * (1.0 - indist);
}

double purcell_factor(const CavityParams& c) {
  c.validate();
  constexpr double kPrefactor = 3.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  const double lambda3 = c.wavelength_in_medium * c.wavelength_in_medium *
                         c.wavelength_in_medium;
  return kPrefactor * (lambda3 / c.mode_volume) * c.quality_factor;
}

double enhanced_decay_rate(const EmitterParams& p, double purcell) {
  require(purcell >= 0.0, "enhanced_decay_rate: Purcell factor must be non-negative");
  return purcell * p.gamma_r + p.gamma_nr;
}

double fiber_transmission(double length_km, const FiberParams& f) {
  require(length_km >= 0.0, "fiber_transmission: length must be non-negative");
  return std::pow(10.0, -f.attenuation_db_per_km * length_km / 10.0);
}

double communication_time(double length_m, const FiberParams& f) {
  require(length_m >= 0.0, "communication_time: length must be non-negative");
  f.validate();
  return length_m / f.speed_in_fiber;
}

double photon_bandwidth_hz(const EmitterParams& p) {
  const double t2 = photon_coherence_time(p);
  require(t2 > 0.0, "photon_bandwidth_hz: zero coherence time");
  return 1.0 / (2.0 * std::numbers::pi * t2);
}

}  // namespace qrep::photonics
