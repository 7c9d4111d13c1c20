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


#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "qrep/error.hpp"
#include "qrep/photonics.hpp"

using namespace qrep;
using namespace qrep::photonics;
using qrep::testing::Gen;

TEST_CASE("total decay rate") {
  CHECK(total_decay_rate(EmitterParams::from_rates(1, 0)) == 1.0);
  CHECK(total_decay_rate(EmitterParams::from_rates(100, 25)) == 125.0);
  EmitterParams dark;
  dark.gamma_r = 0.0;
  dark.gamma_nr = 0.0;
  CHECK(total_decay_rate(dark) == 0.0);
}

TEST_CASE("photon coherence time") {
  CHECK(photon_coherence_time(EmitterParams::from_lifetime(5e-3)) ==
        doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(photon_coherence_time(EmitterParams::from_lifetime(1.0, 1.0, 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(photon_coherence_time(EmitterParams::from_lifetime(1.0, 1.0, 1e-12)) < 1e-11);

  Gen gen(1);
  for (int k = 0; k < 200; ++k) {
    const double t1 = gen.log_uniform(1e-9, 1e-2);
    const double t2s = gen.log_uniform(1e-12, 1.0);
    const auto p = EmitterParams::from_lifetime(t1, gen.uniform(0.0, 1.0), t2s);
    CHECK(photon_coherence_time(p) < 2 * t1);
  }
}

TEST_CASE("indistinguishability") {
  CHECK(indistinguishability(10, 0) == 1.0);
  CHECK(indistinguishability(10, 10) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(indistinguishability(1, 3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(indistinguishability(0, 0), Error);

  // gamma = 1/T1, gamma_star = 2/T2*.
  const auto p = EmitterParams::from_lifetime(1.0, 1.0, 2.0);
  CHECK(dephasing_rate(p) == 1.0);
  CHECK(indistinguishability(p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(indistinguishability(EmitterParams::from_lifetime(1.0)) == 1.0);

  Gen gen(2);
  for (int k = 0; k < 200; ++k) {
    const double g = gen.log_uniform(1e-3, 1e9);
    const double gs = gen.log_uniform(1e-3, 1e9);
    const double i = indistinguishability(g, gs);
    CHECK(i >= 0.0);
    CHECK(i <= 1.0);
    CHECK(indistinguishability(g, gs * 1.01) < i);
  }
}

TEST_CASE("hom coincidence probability") {
  CHECK(hom_coincidence_probability(1.0) == 0.0);
  CHECK(hom_coincidence_probability(0.0) == 0.5);
  CHECK(hom_coincidence_probability(0.8) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(hom_coincidence_probability(1.5), Error);
}

TEST_CASE("purcell factor") {
  const double pi = std::numbers::pi;
  CHECK(purcell_factor({1.0, 1.0, 4 * pi * pi / 3}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purcell_factor({1.0, 1.0, 1000}) ==
        doctest::Approx(3000 / (4 * pi * pi)).epsilon(1e-12));
  CHECK(purcell_factor({1.0, 1.0, 1000}) == doctest::Approx(75.99).epsilon(1e-4));
  CHECK(purcell_factor({1.5e-6, 3e-18, 0.0}) == 0.0);

  Gen gen(3);
  for (int k = 0; k < 100; ++k) {
    const CavityParams c{gen.log_uniform(1e-7, 1e-5), gen.log_uniform(1e-20, 1e-15),
                         gen.log_uniform(1, 1e6)};
    const double f = purcell_factor(c);
    CHECK(purcell_factor({c.wavelength_in_medium, c.mode_volume, 2 * c.quality_factor}) ==
          doctest::Approx(2 * f).epsilon(1e-15));
    CHECK(purcell_factor({c.wavelength_in_medium, 2 * c.mode_volume, c.quality_factor}) ==
          doctest::Approx(f / 2).epsilon(1e-15));
  }
  CHECK_THROWS_AS(purcell_factor({1.0, 0.0, 10}), Error);
}

TEST_CASE("enhanced decay rate") {
  CHECK(enhanced_decay_rate(EmitterParams::from_rates(1, 0), 1) == 1.0);
  CHECK(enhanced_decay_rate(EmitterParams::from_rates(100, 7), 850) == 85007.0);
  CHECK(enhanced_decay_rate(EmitterParams::from_rates(0, 5), 1000) == 5.0);

  Gen gen(4);
  for (int k = 0; k < 100; ++k) {
    const double gr = gen.log_uniform(1, 1e9);
    const auto p = EmitterParams::from_rates(gr, gr * gen.log_uniform(1e-3, 1e3));
    const double f = gen.uniform(1, 1000);
    const double slope = (enhanced_decay_rate(p, f + 500) - enhanced_decay_rate(p, f)) / 500.0;
    CHECK(slope == doctest::Approx(p.gamma_r).epsilon(1e-9));
  }
  CHECK_THROWS_AS(enhanced_decay_rate(EmitterParams::from_rates(1, 0), -1), Error);
}

TEST_CASE("fiber transmission") {
  const FiberParams f;
  CHECK(fiber_transmission(0, f) == 1.0);
  CHECK(fiber_transmission(50, f) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fiber_transmission(100, f) == doctest::Approx(0.01).epsilon(1e-12));

  Gen gen(5);
  for (int k = 0; k < 200; ++k) {
    FiberParams g;
    g.attenuation_db_per_km = gen.uniform(0.1, 0.5);
    const double a = gen.uniform(0, 300), b = gen.uniform(0, 300);
    CHECK(fiber_transmission(a + b, g) ==
          doctest::Approx(fiber_transmission(a, g) * fiber_transmission(b, g)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(fiber_transmission(-1, f), Error);
}

TEST_CASE("communication time") {
  const FiberParams f;
  CHECK(communication_time(0, f) == 0.0);
  CHECK(communication_time(2e8, f) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(communication_time(1e5, f) == doctest::Approx(5e-4).epsilon(1e-15));
}

TEST_CASE("photon bandwidth") {
  const auto p = EmitterParams::from_lifetime(1e-9);
  CHECK(photon_bandwidth_hz(p) ==
        doctest::Approx(1.0 / (2 * std::numbers::pi * 2e-9)).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(EmitterParams::from_lifetime(-1), Error);
  CHECK_THROWS_AS(EmitterParams::from_lifetime(1, 1.5), Error);
  CHECK_THROWS_AS(EmitterParams::from_rates(-1, 0), Error);
  DetectorParams d;
  d.efficiency = 1.2;
  CHECK_THROWS_AS(d.validate(), Error);
  FiberParams f;
  f.speed_in_fiber = 4e8;
  CHECK_THROWS_AS(f.validate(), Error);
  const auto p = EmitterParams::from_lifetime(2.0, 0.25);
  CHECK(p.gamma_r == doctest::Approx(0.125));
  CHECK(p.gamma_nr == doctest::Approx(0.375));
}
