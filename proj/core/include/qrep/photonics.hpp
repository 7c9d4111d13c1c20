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

#include <limits>

namespace qrep::photonics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kSpeedOfLightVacuum = 2.99792458e8;  // m/s
inline constexpr double kDefaultFiberSpeed = 2.0e8;          // m/s, group index ~1.5
inline constexpr double kDefaultAttenuationDbPerKm = 0.2;

/// Optical decay and dephasing parameters of one emitter (or ensemble).
///
/// The pure-dephasing timescale follows the convention gamma_star / 2 = 1 / T2*,
/// so the rate entering the indistinguishability ratio is gamma_star = 2 / T2*.
/// t2_star = infinity means no extra dephasing.
struct EmitterParams {
  double t1_excited = 1.0;  // s
  double t2_star = kInf;    // s
  double gamma_r = 1.0;     // 1/s
  double gamma_nr = 0.0;    // 1/s

  /// From an excited-state lifetime and the radiative branching ratio
  /// gamma_r / (gamma_r + gamma_nr).
  static EmitterParams from_lifetime(double t1, double branching_ratio = 1.0,
                                     double t2_star = kInf);
  /// From radiative and non-radiative rates; T1 = 1 / (gamma_r + gamma_nr).
  static EmitterParams from_rates(double gamma_r, double gamma_nr,
                                  double t2_star = kInf);

  /// Throws qrep::Error if any invariant is broken.
  void validate() const;
};

struct CavityParams {
  double wavelength_in_medium = 1.0;  // m
  double mode_volume = 1.0;           // m^3
  double quality_factor = 0.0;

  void validate() const;
};

struct FiberParams {
  double attenuation_db_per_km = kDefaultAttenuationDbPerKm;
  double speed_in_fiber = kDefaultFiberSpeed;  // m/s

  void validate() const;
};

struct DetectorParams {
  double efficiency = 1.0;
  double dark_count_prob_per_gate = 0.0;
  /// Photon-number-resolving detectors reject events with two or more counts
  /// on the same detector; threshold detectors only report click / no click.
  bool number_resolving = false;

  void validate() const;
};

/// gamma = gamma_r + gamma_nr.
double total_decay_rate(const EmitterParams& p);

/// Pure dephasing rate gamma_star = 2 / T2* (zero when T2* is infinite).
double dephasing_rate(const EmitterParams& p);

/// 1/T2 = 1/(2 T1) + 1/T2*. Equals 2 T1 without extra dephasing.
double photon_coherence_time(const EmitterParams& p);

/// I = gamma / (gamma + gamma_star).
double indistinguishability(double gamma, double gamma_star);

/// Indistinguishability of photons from this emitter, using gamma = 1/T1.
double indistinguishability(const EmitterParams& p);

/// Two-detector coincidence probability after a balanced beamsplitter,
/// normalized so that fully distinguishable photons give 1/2: (1 - I) / 2.
double hom_coincidence_probability(double indistinguishability);

/// F_P = 3/(4 pi^2) (lambda^3 / V) Q.
double purcell_factor(const CavityParams& c);

/// gamma' = F_P gamma_r + gamma_nr.
double enhanced_decay_rate(const EmitterParams& p, double purcell);

/// Survival probability 10^(-alpha L / 10).
double fiber_transmission(double length_km, const FiberParams& f);

/// L / c_fiber.
double communication_time(double length_m, const FiberParams& f);

/// Spectral bandwidth of the emitted photon, 1 / (2 pi T2), in Hz.
double photon_bandwidth_hz(const EmitterParams& p);

}  // namespace qrep::photonics
