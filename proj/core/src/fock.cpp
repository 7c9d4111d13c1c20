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

#include "qrep/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "qrep/error.hpp"

namespace qrep::fock {
namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> layout_dims(int modes, int qubits, int cutoff) {
  std::vector<int> dims(static_cast<std::size_t>(qubits), 2);
  dims.insert(dims.end(), static_cast<std::size_t>(modes), cutoff + 1);
  return dims;
}

std::size_t product(const std::vector<int>& dims) {
  std::size_t d = 1;
  for (int x : dims) d *= static_cast<std::size_t>(x);
  return d;
}

// Mixed-radix digits, first subsystem most significant.
void decompose(std::size_t index, const std::vector<int>& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    digits[s] = static_cast<int>(index % static_cast<std::size_t>(dims[s]));
    index /= static_cast<std::size_t>(dims[s]);
  }
}

std::size_t compose(const std::vector<int>& digits, const std::vector<int>& dims) {
  std::size_t index = 0;
  for (std::size_t s = 0; s < dims.size(); ++s)
    index = index * static_cast<std::size_t>(dims[s]) + static_cast<std::size_t>(digits[s]);
  return index;
}

void check_layout(int modes, int qubits, int cutoff) {
  require(modes >= 0 && modes <= kMaxModes, "fock: mode count must lie in [0, 6]");
  require(qubits >= 0 && qubits <= kMaxQubits, "fock: qubit count must lie in [0, 4]");
  require(cutoff >= 1 && cutoff <= kMaxPhotonsPerMode,
          "fock: photons per mode must lie in [1, 2]");
  require(product(layout_dims(modes, qubits, cutoff)) <= kMaxDimension,
          "fock: Hilbert-space dimension exceeds " + std::to_string(kMaxDimension));
}

// Full-space operator for a local operator on `subs` (local index uses the
// listed order). `op` may map into a space of the same local dimension only.
SparseMatrix embed(const std::vector<int>& dims, std::span<const int> subs, const Matrix& op) {
  const std::size_t d = product(dims);
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(d * static_cast<std::size_t>(op.rows()));
  std::vector<int> digits;
  std::vector<int> local_dims;
  for (int s : subs) local_dims.push_back(dims[static_cast<std::size_t>(s)]);
  std::vector<int> local_digits(subs.size());
  for (std::size_t col = 0; col < d; ++col) {
    decompose(col, dims, digits);
    for (std::size_t k = 0; k < subs.size(); ++k)
      local_digits[k] = digits[static_cast<std::size_t>(subs[k])];
    const auto lcol = static_cast<Eigen::Index>(compose(local_digits, local_dims));
    for (Eigen::Index lrow = 0; lrow < op.rows(); ++lrow) {
      const Complex v = op(lrow, lcol);
      if (v == Complex(0.0, 0.0)) continue;
      std::vector<int> out = digits;
      decompose(static_cast<std::size_t>(lrow), local_dims, local_digits);
      for (std::size_t k = 0; k < subs.size(); ++k)
        out[static_cast<std::size_t>(subs[k])] = local_digits[k];
      triplets.emplace_back(static_cast<Eigen::Index>(compose(out, dims)),
                            static_cast<Eigen::Index>(col), v);
    }
  }
  SparseMatrix full(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  full.setFromTriplets(triplets.begin(), triplets.end());
  return full;
}

// Reduced density operator of the listed subsystems, in the listed order.
Matrix local_reduced(const FockSystem& sys, const std::vector<int>& dims,
                     std::span<const int> subs) {
  std::vector<int> local_dims;
  for (int s : subs) local_dims.push_back(dims[static_cast<std::size_t>(s)]);
  const auto ld = static_cast<Eigen::Index>(product(local_dims));
  Matrix out = Matrix::Zero(ld, ld);
  std::vector<bool> in_subs(dims.size(), false);
  for (int s : subs) in_subs[static_cast<std::size_t>(s)] = true;
  const std::size_t d = product(dims);
  std::vector<int> di, dj, li(subs.size()), lj(subs.size());
  for (std::size_t i = 0; i < d; ++i) {
    decompose(i, dims, di);
    for (std::size_t j = 0; j < d; ++j) {
      decompose(j, dims, dj);
      bool same_rest = true;
      for (std::size_t s = 0; s < dims.size() && same_rest; ++s)
        if (!in_subs[s] && di[s] != dj[s]) same_rest = false;
      if (!same_rest) continue;
      for (std::size_t k = 0; k < subs.size(); ++k) {
        li[k] = di[static_cast<std::size_t>(subs[k])];
        lj[k] = dj[static_cast<std::size_t>(subs[k])];
      }
      out(static_cast<Eigen::Index>(compose(li, local_dims)),
          static_cast<Eigen::Index>(compose(lj, local_dims))) +=
          sys.element(i, j);
    }
  }
  return out;
}

// Two-mode beamsplitter from the truncated input space into the space with up
// to 2*cutoff photons per mode.
Matrix beamsplitter_extended(int cutoff) {
  const int in = cutoff + 1;
  const int out = 2 * cutoff + 1;
  Matrix u = Matrix::Zero(out * out, in * in);
  for (int na = 0; na < in; ++na) {
    for (int nb = 0; nb < in; ++nb) {
      const int total = na + nb;
      const double norm = std::pow(std::sqrt(0.5), total) / std::sqrt(factorial(na) * factorial(nb));
      for (int i = 0; i <= na; ++i) {
        for (int j = 0; j <= nb; ++j) {
          const int m = i + j;
          const int n = total - m;
          const double sign = ((nb - j) % 2 == 0) ? 1.0 : -1.0;
          const double amp = norm * binomial(na, i) * binomial(nb, j) * sign *
                             std::sqrt(factorial(m) * factorial(n));
          u(m * out + n, na * in + nb) += amp;
        }
      }
    }
  }
  return u;
}

std::vector<Matrix> loss_kraus(int cutoff, double eta) {
  std::vector<Matrix> kraus;
  const int dim = cutoff + 1;
  for (int k = 0; k <= cutoff; ++k) {
    Matrix op = Matrix::Zero(dim, dim);
    for (int n = k; n <= cutoff; ++n) {
      op(n - k, n) = std::sqrt(binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
    }
    kraus.push_back(std::move(op));
  }
  return kraus;
}

void check_mode(const FockSystem& sys, int mode) {
  require(mode >= 0 && mode < sys.mode_count(), "fock: mode index out of range");
}

// Post-measurement bookkeeping shared by both detector models: weight[n1][n2]
// is P(outcome | n1, n2 photons after loss).
template <typename Weight>
std::pair<double, std::optional<FockSystem>> condition(const FockSystem& lossy, int mode_1,
                                                       int mode_2, Weight weight) {
  const int subs[2] = {lossy.subsystem_of_mode(mode_1), lossy.subsystem_of_mode(mode_2)};
  Matrix acc;
  for (int n1 = 0; n1 <= lossy.max_photons(); ++n1) {
    for (int n2 = 0; n2 <= lossy.max_photons(); ++n2) {
      const double w = weight(n1, n2);
      if (w == 0.0) continue;
      const int vals[2] = {n1, n2};
      Matrix block = reduced_block(lossy, subs, vals, vals);
      if (acc.size() == 0) acc = Matrix::Zero(block.rows(), block.cols());
      acc += w * block;
    }
  }
  if (acc.size() == 0) return {0.0, std::nullopt};
  const double p = acc.trace().real();
  if (!(p > 0.0)) return {0.0, std::nullopt};
  return {p, FockSystem::from_density(lossy.mode_count() - 2, lossy.qubit_count(), acc / p,
                                      lossy.max_photons())};
}

}  // namespace

FockSystem::FockSystem(int modes, int qubits, int cutoff, Matrix rho)
    : modes_(modes), qubits_(qubits), cutoff_(cutoff), rho_(std::move(rho)) {}

FockSystem::FockSystem(int mode_count, int qubit_count, int max_photons)
    : modes_(mode_count), qubits_(qubit_count), cutoff_(max_photons) {
  check_layout(modes_, qubits_, cutoff_);
  const auto d = static_cast<Eigen::Index>(product(layout_dims(modes_, qubits_, cutoff_)));
  rho_ = Matrix::Zero(d, d);
  rho_(0, 0) = 1.0;
}

FockSystem FockSystem::from_pure(int mode_count, int qubit_count, const Vector& psi,
                                 int max_photons) {
  check_layout(mode_count, qubit_count, max_photons);
  const auto d = static_cast<Eigen::Index>(
      product(layout_dims(mode_count, qubit_count, max_photons)));
  require(psi.size() == d, "fock: state vector has the wrong dimension");
  const double norm = psi.norm();
  require(norm > 0.0, "fock: zero state vector");
  const Vector v = psi / norm;
  return FockSystem(mode_count, qubit_count, max_photons, v * v.adjoint());
}

FockSystem FockSystem::from_density(int mode_count, int qubit_count, Matrix rho,
                                    int max_photons) {
  check_layout(mode_count, qubit_count, max_photons);
  const auto d = static_cast<Eigen::Index>(
      product(layout_dims(mode_count, qubit_count, max_photons)));
  require(rho.rows() == d && rho.cols() == d, "fock: density matrix has the wrong dimension");
  return FockSystem(mode_count, qubit_count, max_photons, std::move(rho));
}

std::size_t FockSystem::index(std::span<const int> qubit_values,
                              std::span<const int> photon_numbers) const {
  require(static_cast<int>(qubit_values.size()) == qubits_ &&
              static_cast<int>(photon_numbers.size()) == modes_,
          "fock: basis label has the wrong length");
  std::vector<int> digits(qubit_values.begin(), qubit_values.end());
  digits.insert(digits.end(), photon_numbers.begin(), photon_numbers.end());
  const auto dims = layout_dims(modes_, qubits_, cutoff_);
  for (std::size_t s = 0; s < dims.size(); ++s)
    require(digits[s] >= 0 && digits[s] < dims[s], "fock: basis label out of range");
  return compose(digits, dims);
}

double FockSystem::population(std::span<const int> qubit_values,
                              std::span<const int> photon_numbers) const {
  const auto i = static_cast<Eigen::Index>(index(qubit_values, photon_numbers));
  return rho_(i, i).real();
}

double FockSystem::trace() const { return rho_.trace().real(); }

void FockSystem::validate() const {
  require(std::abs(trace() - 1.0) <= 1e-10, "fock: trace deviates from 1");
  require((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
          "fock: density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, "fock: density matrix is not positive");
}

int FockSystem::subsystem_of_mode(int mode) const {
  require(mode >= 0 && mode < modes_, "fock: mode index out of range");
  return qubits_ + mode;
}

int FockSystem::subsystem_of_qubit(int qubit) const {
  require(qubit >= 0 && qubit < qubits_, "fock: qubit index out of range");
  return qubit;
}

int FockSystem::subsystem_dim(int subsystem) const {
  return subsystem < qubits_ ? 2 : cutoff_ + 1;
}

FockSystem apply_local(const FockSystem& sys, std::span<const int> subsystems,
                       const Matrix& op) {
  const auto dims = layout_dims(sys.modes_, sys.qubits_, sys.cutoff_);
  const SparseMatrix full = embed(dims, subsystems, op);
  Matrix rho = full * sys.rho_;
  rho = (full * rho.adjoint()).adjoint().eval();
  return FockSystem(sys.modes_, sys.qubits_, sys.cutoff_, std::move(rho));
}

FockSystem apply_kraus(const FockSystem& sys, std::span<const int> subsystems,
                       std::span<const Matrix> kraus) {
  const auto dims = layout_dims(sys.modes_, sys.qubits_, sys.cutoff_);
  Matrix acc = Matrix::Zero(sys.rho_.rows(), sys.rho_.cols());
  for (const Matrix& k : kraus) {
    const SparseMatrix full = embed(dims, subsystems, k);
    Matrix left = full * sys.rho_;
    acc += (full * left.adjoint()).adjoint();
  }
  return FockSystem(sys.modes_, sys.qubits_, sys.cutoff_, std::move(acc));
}

Matrix reduced_block(const FockSystem& sys, std::span<const int> subsystems,
                     std::span<const int> row_values, std::span<const int> col_values,
                     std::vector<int>* kept) {
  const auto dims = layout_dims(sys.modes_, sys.qubits_, sys.cutoff_);
  require(row_values.size() == subsystems.size() && col_values.size() == subsystems.size(),
          "fock: block label has the wrong length");
  std::vector<bool> fixed(dims.size(), false);
  for (int s : subsystems) {
    require(s >= 0 && s < static_cast<int>(dims.size()), "fock: subsystem out of range");
    fixed[static_cast<std::size_t>(s)] = true;
  }
  std::vector<int> rest;
  std::vector<int> rest_dims;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (!fixed[s]) {
      rest.push_back(static_cast<int>(s));
      rest_dims.push_back(dims[s]);
    }
  }
  if (kept) *kept = rest;
  const auto rd = static_cast<Eigen::Index>(product(rest_dims));
  Matrix out(rd, rd);
  std::vector<int> full_row(dims.size()), full_col(dims.size()), ri, rj;
  for (std::size_t k = 0; k < subsystems.size(); ++k) {
    full_row[static_cast<std::size_t>(subsystems[k])] = row_values[k];
    full_col[static_cast<std::size_t>(subsystems[k])] = col_values[k];
  }
  for (Eigen::Index i = 0; i < rd; ++i) {
    decompose(static_cast<std::size_t>(i), rest_dims, ri);
    for (std::size_t k = 0; k < rest.size(); ++k) full_row[static_cast<std::size_t>(rest[k])] = ri[k];
    const auto row = static_cast<Eigen::Index>(compose(full_row, dims));
    for (Eigen::Index j = 0; j < rd; ++j) {
      decompose(static_cast<std::size_t>(j), rest_dims, rj);
      for (std::size_t k = 0; k < rest.size(); ++k)
        full_col[static_cast<std::size_t>(rest[k])] = rj[k];
      out(i, j) = sys.rho_(row, static_cast<Eigen::Index>(compose(full_col, dims)));
    }
  }
  return out;
}

FockSystem keep_subsystems(const FockSystem& sys, std::span<const int> subsystems) {
  std::vector<int> keep(subsystems.begin(), subsystems.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const int total = sys.subsystem_count();
  std::vector<int> traced;
  for (int s = 0; s < total; ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);
  int kept_qubits = 0;
  for (int s : keep) {
    require(s >= 0 && s < total, "fock: subsystem out of range");
    if (s < sys.qubits_) ++kept_qubits;
  }
  const int kept_modes = static_cast<int>(keep.size()) - kept_qubits;
  if (traced.empty()) return sys;

  std::vector<int> traced_dims;
  for (int s : traced) traced_dims.push_back(sys.subsystem_dim(s));
  Matrix acc;
  std::vector<int> vals;
  for (std::size_t v = 0; v < product(traced_dims); ++v) {
    decompose(v, traced_dims, vals);
    Matrix block = reduced_block(sys, traced, vals, vals);
    if (acc.size() == 0) acc = Matrix::Zero(block.rows(), block.cols());
    acc += block;
  }
  return FockSystem(kept_modes, kept_qubits, sys.cutoff_, std::move(acc));
}

FockSystem trace_out_modes(const FockSystem& sys, std::span<const int> modes) {
  std::vector<int> keep;
  for (int s = 0; s < sys.subsystem_count(); ++s) {
    bool traced = false;
    for (int m : modes) traced = traced || (sys.subsystem_of_mode(m) == s);
    if (!traced) keep.push_back(s);
  }
  return keep_subsystems(sys, keep);
}

FockSystem with_vacuum_mode(const FockSystem& sys) {
  check_layout(sys.modes_ + 1, sys.qubits_, sys.cutoff_);
  const Eigen::Index k = sys.cutoff_ + 1;
  const Eigen::Index d = sys.rho_.rows();
  Matrix rho = Matrix::Zero(d * k, d * k);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i * k, j * k) = sys.rho_(i, j);
  return FockSystem(sys.modes_ + 1, sys.qubits_, sys.cutoff_, std::move(rho));
}

FockSystem beamsplitter(const FockSystem& sys, int mode_a, int mode_b) {
  check_mode(sys, mode_a);
  check_mode(sys, mode_b);
  require(mode_a != mode_b, "beamsplitter: modes must be distinct");
  const int c = sys.max_photons();
  const int in = c + 1;
  const int out = 2 * c + 1;
  const Matrix u_ext = beamsplitter_extended(c);

  const auto dims = layout_dims(sys.mode_count(), sys.qubit_count(), c);
  const int subs[2] = {sys.subsystem_of_mode(mode_a), sys.subsystem_of_mode(mode_b)};
  const Matrix rho_ab = local_reduced(sys, dims, subs);
  const Matrix rho_out = u_ext * rho_ab * u_ext.adjoint();
  double leaked = 0.0;
  for (int m = 0; m < out; ++m)
    for (int n = 0; n < out; ++n)
      if (m > c || n > c) leaked += rho_out(m * out + n, m * out + n).real();
  require(leaked <= 1e-12, "beamsplitter: truncation violated (" + std::to_string(leaked) +
                               " population above " + std::to_string(c) + " photons per mode)");

  Matrix u = Matrix::Zero(in * in, in * in);
  for (int m = 0; m <= c; ++m)
    for (int n = 0; n <= c; ++n) u.row(m * in + n) = u_ext.row(m * out + n);
  return apply_local(sys, subs, u);
}

FockSystem loss_channel(const FockSystem& sys, int mode, double survival) {
  check_mode(sys, mode);
  require(survival >= 0.0 && survival <= 1.0, "loss_channel: survival must lie in [0,1]");
  if (survival == 1.0) return sys;
  const auto kraus = loss_kraus(sys.max_photons(), survival);
  const int subs[1] = {sys.subsystem_of_mode(mode)};
  return apply_kraus(sys, subs, kraus);
}

FockSystem flip_qubit(const FockSystem& sys, int qubit) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const int subs[1] = {sys.subsystem_of_qubit(qubit)};
  return apply_local(sys, subs, x);
}

std::vector<ClickOutcome> threshold_measure(const FockSystem& sys, int mode_1, int mode_2,
                                            double efficiency, double dark_count) {
  check_mode(sys, mode_1);
  check_mode(sys, mode_2);
  require(mode_1 != mode_2, "threshold_measure: modes must be distinct");
  require(efficiency >= 0.0 && efficiency <= 1.0,
          "threshold_measure: efficiency must lie in [0,1]");
  require(dark_count >= 0.0 && dark_count <= 1.0,
          "threshold_measure: dark count probability must lie in [0,1]");
  const FockSystem lossy = loss_channel(loss_channel(sys, mode_1, efficiency), mode_2, efficiency);
  auto click_prob = [dark_count](int n) { return n > 0 ? 1.0 : dark_count; };

  std::vector<ClickOutcome> outcomes;
  for (const ClickPattern pattern : {ClickPattern{false, false}, ClickPattern{true, false},
                                     ClickPattern{false, true}, ClickPattern{true, true}}) {
    auto weight = [&](int n1, int n2) {
      const double p1 = click_prob(n1);
      const double p2 = click_prob(n2);
      return (pattern.detector_1_clicked ? p1 : 1.0 - p1) *
             (pattern.detector_2_clicked ? p2 : 1.0 - p2);
    };
    auto [p, state] = condition(lossy, mode_1, mode_2, weight);
    outcomes.push_back(ClickOutcome{pattern, p, std::move(state)});
  }
  return outcomes;
}

std::vector<CountOutcome> count_measure(const FockSystem& sys, int mode_1, int mode_2,
                                        double efficiency, double dark_count) {
  check_mode(sys, mode_1);
  check_mode(sys, mode_2);
  require(mode_1 != mode_2, "count_measure: modes must be distinct");
  require(efficiency >= 0.0 && efficiency <= 1.0, "count_measure: efficiency must lie in [0,1]");
  require(dark_count >= 0.0 && dark_count <= 1.0,
          "count_measure: dark count probability must lie in [0,1]");
  const FockSystem lossy = loss_channel(loss_channel(sys, mode_1, efficiency), mode_2, efficiency);
  auto count_prob = [dark_count](int n, int c) {
    if (c == n) return 1.0 - dark_count;
    if (c == n + 1) return dark_count;
    return 0.0;
  };
  std::vector<CountOutcome> outcomes;
  const int max_count = sys.max_photons() + 1;
  for (int c1 = 0; c1 <= max_count; ++c1) {
    for (int c2 = 0; c2 <= max_count; ++c2) {
      auto weight = [&](int n1, int n2) { return count_prob(n1, c1) * count_prob(n2, c2); };
      auto [p, state] = condition(lossy, mode_1, mode_2, weight);
      outcomes.push_back(CountOutcome{c1, c2, p, std::move(state)});
    }
  }
  return outcomes;
}

}  // namespace qrep::fock
