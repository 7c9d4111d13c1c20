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

#include "oracle.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace qrep::testing {

using fock::Complex;
using fock::FockSystem;
using fock::Matrix;
using fock::Vector;

namespace {

// Layout shared by all constructions: two qubits and two modes. Mode 0
// carries the photon of the first source, mode 1 that of the second;
// detector 1 watches output mode 0 and detector 2 output mode 1.
constexpr int kQubits = 2;
constexpr int kModes = 2;
constexpr int kCutoff = 2;
constexpr Eigen::Index kDim = 4 * 9;

// POVM element for one detector, as a function of the photons reaching it.
double click_weight(int n, bool want_click, const photonics::DetectorParams& det) {
  const double d = det.dark_count_prob_per_gate;
  if (det.number_resolving) {
    // A dark count adds one count; "click" means exactly one count.
    const double one = (n == 1 ? 1.0 - d : 0.0) + (n == 0 ? d : 0.0);
    const double zero = n == 0 ? 1.0 - d : 0.0;
    return want_click ? one : zero;
  }
  const double silent = n == 0 ? 1.0 - d : 0.0;
  return want_click ? 1.0 - silent : silent;
}

// Loss, beamsplitter, projection onto "only detector `which` fires".
// Returns the unnormalized conditional operator on the two qubits.
Matrix detect(FockSystem s, double eta, const photonics::DetectorParams& det, int which) {
  for (int m = 0; m < kModes; ++m) s = fock::loss_channel(s, m, eta);
  s = fock::beamsplitter(s, 0, 1);
  const std::array<int, 2> subs = {s.subsystem_of_mode(0), s.subsystem_of_mode(1)};
  Matrix acc = Matrix::Zero(4, 4);
  for (int n0 = 0; n0 <= kCutoff; ++n0)
    for (int n1 = 0; n1 <= kCutoff; ++n1) {
      const double w = click_weight(n0, which == 1, det) * click_weight(n1, which == 2, det);
      if (w == 0.0) continue;
      const std::array<int, 2> v = {n0, n1};
      acc += w * fock::reduced_block(s, subs, v, v);
    }
  return acc;
}

std::size_t full_index(int q0, int q1, int n0, int n1) {
  return static_cast<std::size_t>(((q0 * 2 + q1) * (kCutoff + 1) + n0) * (kCutoff + 1) + n1);
}

FockSystem from_vectors(const std::vector<std::pair<double, Vector>>& mix) {
  Matrix rho = Matrix::Zero(kDim, kDim);
  for (const auto& [w, v] : mix) rho += w * v * v.adjoint();
  return FockSystem::from_density(kModes, kQubits, rho, kCutoff);
}

// Qubit-only operator embedded with both modes in vacuum, normalized.
FockSystem with_vacuum(const Matrix& qubits) {
  Matrix rho = Matrix::Zero(kDim, kDim);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho(static_cast<Eigen::Index>(full_index(i / 2, i % 2, 0, 0)),
          static_cast<Eigen::Index>(full_index(j / 2, j % 2, 0, 0))) = qubits(i, j);
  return FockSystem::from_density(kModes, kQubits, rho / rho.trace().real(), kCutoff);
}

// |1, 0> <-> |1, 1> on (qubit, mode), local index q * 3 + n: an emitter in
// |1> puts one photon into the mode.
Matrix emission_unitary() {
  Matrix u = Matrix::Identity(6, 6);
  u(3, 3) = 0.0;
  u(4, 4) = 0.0;
  u(3, 4) = 1.0;
  u(4, 3) = 1.0;
  return u;
}

FockSystem emit(FockSystem s, int qubit, int mode) {
  const std::array<int, 2> subs = {s.subsystem_of_qubit(qubit), s.subsystem_of_mode(mode)};
  return fock::apply_local(s, subs, emission_unitary());
}

// Two-component pair as a mixture of pure states over the local space
// |x_outer x_inner>, index x_outer * 2 + x_inner.
std::vector<std::pair<double, std::array<Complex, 4>>> pair_components(const PairState& ps,
                                                                       bool outer_first) {
  const double s = ps.sign;
  const double r = 1.0 / std::sqrt(2.0);
  // |01> + s|10> in (left node, right node) order.
  auto amps = [&](double sign) -> std::array<Complex, 4> {
    if (outer_first) return {0.0, r, sign * r, 0.0};
    // Right pair: outer node is the right one, so swap the roles.
    return {0.0, sign * r, r, 0.0};
  };
  return {
      {ps.w_ent * (1.0 + ps.coherence) / 2.0, amps(s)},
      {ps.w_ent * (1.0 - ps.coherence) / 2.0, amps(-s)},
      {ps.w_vac, {1.0, 0.0, 0.0, 0.0}},
  };
}

OracleHerald finish(const Matrix& m1, const Matrix& m2, double coherence_factor) {
  OracleHerald out;
  out.det1_prob = m1.trace().real();
  out.success_prob = out.det1_prob + m2.trace().real();
  out.det1 = project_pair(m1);
  out.det2 = project_pair(m2);
  out.det1.coherence *= coherence_factor;
  out.det2.coherence *= coherence_factor;
  return out;
}

}  // namespace

PairState project_pair(const Matrix& rho) {
  const double tr = rho.trace().real();
  PairState ps;
  ps.left_node = NodeId{0};
  ps.right_node = NodeId{1};
  if (!(tr > 0.0)) {
    ps.w_ent = 0.0;
    ps.w_vac = 1.0;
    ps.coherence = 0.0;
    return ps;
  }
  const double sector = (rho(1, 1).real() + rho(2, 2).real()) / tr;
  const Complex off = rho(1, 2) / tr;
  ps.w_ent = sector;
  ps.w_vac = 1.0 - sector;
  ps.coherence = sector > 0.0 ? 2.0 * std::abs(off) / sector : 0.0;
  ps.sign = off.real() < 0.0 ? -1 : +1;
  return ps;
}

OracleHerald oracle_dlcz(double p, double eta, const photonics::DetectorParams& det,
                         double indistinguishability) {
  // Qubits: ensemble A, ensemble B. Stokes photon of A in mode 0, of B in mode 1.
  Vector v = Vector::Zero(kDim);
  const double amp[2] = {std::sqrt(1.0 - p), std::sqrt(p)};
  for (int xa = 0; xa < 2; ++xa)
    for (int xb = 0; xb < 2; ++xb)
      v(static_cast<Eigen::Index>(full_index(xa, xb, xa, xb))) = amp[xa] * amp[xb];
  const FockSystem sys = from_vectors({{1.0, v}});
  return finish(detect(sys, eta, det, 1), detect(sys, eta, det, 2), indistinguishability);
}

OracleHerald oracle_single_emitter(double eta, const photonics::DetectorParams& det,
                                   double indistinguishability) {
  // One round on a qubit-only state: emitter A -> mode 0, B -> mode 1.
  auto round = [&](const Matrix& qubits, int which) {
    const FockSystem lit = emit(emit(with_vacuum(qubits), 0, 0), 1, 1);
    return Matrix(qubits.trace().real() * detect(lit, eta, det, which));
  };
  const Matrix start = Matrix::Constant(4, 4, Complex(0.25, 0.0));
  Matrix flip = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) flip(3 - k, k) = 1.0;  // X on both qubits

  double total = 0.0;
  Matrix both[2][2];
  for (int a = 1; a <= 2; ++a) {
    const Matrix first = round(start, a);
    const Matrix flipped = flip * first * flip.adjoint();
    for (int b = 1; b <= 2; ++b) {
      both[a - 1][b - 1] =
          flipped.trace().real() > 0.0 ? round(flipped, b) : Matrix(Matrix::Zero(4, 4));
      total += both[a - 1][b - 1].trace().real();
    }
  }
  OracleHerald out = finish(both[0][0], both[0][1], indistinguishability);
  out.success_prob = total;
  return out;
}

OracleHerald oracle_swap(const PairState& left, const PairState& right, double eta,
                         const photonics::DetectorParams& det, double indistinguishability) {
  // Qubits: A (outer end of left), D (outer end of right). The inner halves
  // enter as photons: B in mode 0, C in mode 1.
  const auto lc = pair_components(left, true);    // index xA * 2 + xB
  const auto rc = pair_components(right, false);  // index xD * 2 + xC
  std::vector<std::pair<double, Vector>> mix;
  for (const auto& [wl, al] : lc)
    for (const auto& [wr, ar] : rc) {
      if (wl * wr == 0.0) continue;
      Vector v = Vector::Zero(kDim);
      for (int xa = 0; xa < 2; ++xa)
        for (int xb = 0; xb < 2; ++xb)
          for (int xd = 0; xd < 2; ++xd)
            for (int xc = 0; xc < 2; ++xc) {
              const Complex amp = al[static_cast<std::size_t>(xa * 2 + xb)] *
                                  ar[static_cast<std::size_t>(xd * 2 + xc)];
              v(static_cast<Eigen::Index>(full_index(xa, xd, xb, xc))) += amp;
            }
      mix.emplace_back(wl * wr, v);
    }
  const FockSystem sys = from_vectors(mix);
  return finish(detect(sys, eta, det, 1), detect(sys, eta, det, 2), indistinguishability);
}

double expected_rounds_max(double p) {
  const double q = 1.0 - p;
  return 2.0 / p - 1.0 / (1.0 - q * q);
}

double expected_rounds_cutoff(double p, int max_age) {
  // Unknowns: h[0] = both empty, h[a] = one pair held at age a (1..A).
  const int n = max_age + 1;
  const double q = 1.0 - p;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  a(0, 0) -= q * q;
  if (max_age >= 1) a(0, 1) -= 2.0 * p * q;
  for (int age = 1; age <= max_age; ++age) {
    if (age + 1 <= max_age) {
      a(age, age + 1) -= q;  // other link failed, pair ages
    } else {
      a(age, 1) -= p;  // pair expired, other link's fresh pair is now held
      a(age, 0) -= q;
    }
  }
  const Eigen::VectorXd h = a.fullPivLu().solve(b);
  return h(0);
}

double Gen::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

PairState Gen::pair(NodeId left, NodeId right) {
  return PairState::make(uniform(0.0, 1.0), uniform(0.0, 1.0), coin() ? 1 : -1, left, right);
}

photonics::DetectorParams Gen::detector(bool allow_dark) {
  photonics::DetectorParams d;
  d.efficiency = uniform(0.05, 1.0);
  d.dark_count_prob_per_gate = allow_dark && coin(0.7) ? log_uniform(1e-6, 0.05) : 0.0;
  d.number_resolving = coin();
  return d;
}

}  // namespace qrep::testing
