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


#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracle.hpp"
#include "qrep/error.hpp"
#include "qrep/fock.hpp"
#include "qrep/pair_state.hpp"

using namespace qrep;
using namespace qrep::fock;
using qrep::testing::Gen;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Random mixed state of one qubit and two modes holding at most two photons
// in total, so beamsplitters stay inside the truncation.
FockSystem random_state(Gen& gen) {
  const FockSystem probe(2, 1);
  const int rank = gen.integer(1, 3);
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(probe.dimension()),
                            static_cast<Eigen::Index>(probe.dimension()));
  for (int r = 0; r < rank; ++r) {
    Vector v = Vector::Zero(rho.rows());
    for (int q = 0; q < 2; ++q)
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b) {
          const std::array<int, 1> qs = {q};
          const std::array<int, 2> ns = {a, b};
          v(static_cast<Eigen::Index>(probe.index(qs, ns))) =
              Complex(gen.uniform(-1, 1), gen.uniform(-1, 1));
        }
    rho += v * v.adjoint();
  }
  return FockSystem::from_density(2, 1, rho / rho.trace().real());
}

double min_eigenvalue(const FockSystem& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.density_matrix());
  return es.eigenvalues().minCoeff();
}

double distance(const FockSystem& a, const FockSystem& b) {
  return (a.density_matrix() - b.density_matrix()).cwiseAbs().maxCoeff();
}

FockSystem one_photon_in_mode_0() {
  Vector v = Vector::Zero(9);
  v(3) = 1.0;  // |1, 0>
  return FockSystem::from_pure(2, 0, v);
}

double photon_present(const FockSystem& s, int mode) {
  double p = 0.0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const std::array<int, 2> ns = {a, b};
      if ((mode == 0 ? a : b) > 0) p += s.population({}, ns);
    }
  return p;
}

}  // namespace

TEST_CASE("pair state basics") {
  CHECK(fidelity(PairState::make(1, 1)) == 1.0);
  CHECK(fidelity(PairState::make(1, 0)) == 0.5);
  CHECK(fidelity(PairState::make(0.8, 0.9)) == doctest::Approx(0.76).epsilon(1e-15));
  CHECK(std::isinf(PairState::make(1, 1).ratio()));
  CHECK(PairState::make(0.75, 1).ratio() == doctest::Approx(3.0));
  CHECK_THROWS_AS(PairState::make(1.2, 1), Error);
  CHECK_THROWS_AS(PairState::make(0.5, 1.5), Error);
  CHECK_THROWS_AS(PairState::make(0.5, 1, 0), Error);
}

TEST_CASE("decohere") {
  const PairState p = PairState::make(0.9, 1.0);
  CHECK(decohere(p, 0.0, 1.0).coherence == 1.0);
  CHECK(decohere(p, 2.0, 2.0).coherence == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(decohere(p, 2.0, 2.0).coherence == doctest::Approx(0.3679).epsilon(1e-4));
  CHECK(fidelity(decohere(p, 1e6, 1.0)) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(decohere(p, 10.0, kInf).coherence == 1.0);
  CHECK(decohere(p, 1.0, 1.0).w_ent == p.w_ent);
  CHECK_THROWS_AS(decohere(p, -1.0, 1.0), Error);

  Gen gen(31);
  for (int k = 0; k < 200; ++k) {
    const double t2 = gen.log_uniform(1e-3, 10);
    const double a = gen.uniform(0, 5), b = gen.uniform(0, 5);
    const double two_step = decohere(decohere(p, a, t2), b, t2).coherence;
    CHECK(two_step == doctest::Approx(decohere(p, a + b, t2).coherence).epsilon(1e-14));
  }
}

TEST_CASE("attenuate") {
  const PairState p = PairState::make(0.9, 0.7);
  const PairState q = attenuate(p, 0.5);
  CHECK(q.w_ent == doctest::Approx(0.45));
  CHECK(q.w_vac == doctest::Approx(0.55));
  CHECK(q.coherence == 0.7);
  CHECK(attenuate(p, 1.0).w_ent == p.w_ent);
}

TEST_CASE("beamsplitter examples") {
  const FockSystem vac(2);
  CHECK(distance(beamsplitter(vac, 0, 1), vac) < 1e-15);

  const FockSystem out = beamsplitter(one_photon_in_mode_0(), 0, 1);
  CHECK(photon_present(out, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(photon_present(out, 1) == doctest::Approx(0.5).epsilon(1e-14));
  const auto clicks = threshold_measure(out, 0, 1, 1.0);
  for (const auto& c : clicks) {
    if (c.pattern.detector_1_clicked != c.pattern.detector_2_clicked)
      CHECK(c.probability == doctest::Approx(0.5).epsilon(1e-14));
    else
      CHECK(c.probability == doctest::Approx(0.0));
  }
}

TEST_CASE("hong-ou-mandel bunching") {
  Vector v = Vector::Zero(9);
  v(4) = 1.0;  // |1, 1>
  const FockSystem out = beamsplitter(FockSystem::from_pure(2, 0, v), 0, 1);
  for (const auto& c : threshold_measure(out, 0, 1, 1.0)) {
    if (c.pattern.detector_1_clicked && c.pattern.detector_2_clicked)
      CHECK(c.probability < 1e-14);
  }
  for (const auto& c : count_measure(out, 0, 1, 1.0)) {
    const bool bunched = (c.count_1 == 2 && c.count_2 == 0) || (c.count_1 == 0 && c.count_2 == 2);
    CHECK(c.probability == doctest::Approx(bunched ? 0.5 : 0.0));
  }
}

TEST_CASE("loss channel examples") {
  const FockSystem one = one_photon_in_mode_0();
  CHECK(distance(loss_channel(one, 0, 1.0), one) < 1e-15);
  CHECK(photon_present(loss_channel(one, 0, 0.0), 0) < 1e-15);
  CHECK(photon_present(loss_channel(one, 0, 0.3), 0) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("threshold measurement examples") {
  const auto vac = threshold_measure(FockSystem(2), 0, 1, 0.7);
  for (const auto& c : vac) {
    const bool none = !c.pattern.detector_1_clicked && !c.pattern.detector_2_clicked;
    CHECK(c.probability == doctest::Approx(none ? 1.0 : 0.0));
  }
}

TEST_CASE("fock channels preserve trace and positivity") {
  Gen gen(32);
  for (int k = 0; k < 60; ++k) {
    const FockSystem s = random_state(gen);
    const std::array<FockSystem, 4> outs = {
        beamsplitter(s, 0, 1), loss_channel(s, gen.integer(0, 1), gen.uniform(0, 1)),
        flip_qubit(s, 0), with_vacuum_mode(s)};
    for (const auto& o : outs) {
      CHECK(o.trace() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(min_eigenvalue(o) >= -1e-10);
      CHECK_NOTHROW(o.validate());
    }
    const std::array<int, 1> keep = {0};
    const FockSystem reduced = keep_subsystems(s, keep);
    CHECK(reduced.trace() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("two beamsplitters compose to the identity") {
  Gen gen(33);
  for (int k = 0; k < 60; ++k) {
    const FockSystem s = random_state(gen);
    CHECK(distance(beamsplitter(beamsplitter(s, 0, 1), 0, 1), s) < 1e-10);
  }
}

TEST_CASE("loss channels compose") {
  Gen gen(34);
  for (int k = 0; k < 60; ++k) {
    const FockSystem s = random_state(gen);
    const double a = gen.uniform(0, 1), b = gen.uniform(0, 1);
    const int m = gen.integer(0, 1);
    CHECK(distance(loss_channel(loss_channel(s, m, a), m, b), loss_channel(s, m, a * b)) <
          1e-10);
  }
}

TEST_CASE("measurement probabilities sum to one") {
  Gen gen(35);
  for (int k = 0; k < 100; ++k) {
    const FockSystem s = random_state(gen);
    const double eff = gen.uniform(0, 1);
    const double dark = gen.coin() ? gen.uniform(0, 0.1) : 0.0;
    double total = 0.0;
    for (const auto& c : threshold_measure(s, 0, 1, eff, dark)) {
      total += c.probability;
      if (c.state) CHECK(c.state->trace() == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    double counted = 0.0;
    for (const auto& c : count_measure(s, 0, 1, eff, dark)) counted += c.probability;
    CHECK(counted == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fock system limits") {
  CHECK_THROWS_AS(FockSystem(7), Error);
  CHECK_THROWS_AS(FockSystem(2, 5), Error);
  Vector v = Vector::Zero(9);
  v(8) = 1.0;  // |2, 2>
  CHECK_THROWS_AS(beamsplitter(FockSystem::from_pure(2, 0, v), 0, 1), Error);
}

TEST_CASE("oracle projection") {
  Matrix rho = Matrix::Zero(4, 4);
  rho(1, 1) = rho(2, 2) = 0.4;
  rho(1, 2) = rho(2, 1) = -0.3;
  rho(0, 0) = 0.2;
  const PairState p = testing::project_pair(rho);
  CHECK(p.w_ent == doctest::Approx(0.8));
  CHECK(p.coherence == doctest::Approx(0.75));
  CHECK(p.sign == -1);
}
