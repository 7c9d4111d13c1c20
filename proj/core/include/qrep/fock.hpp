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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qrep::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxModes = 6;
inline constexpr int kMaxPhotonsPerMode = 2;
inline constexpr int kMaxQubits = 4;
inline constexpr std::size_t kMaxDimension = 4096;

/// Density operator over up to four qubits tensored with up to six bosonic
/// modes truncated at two photons each.
///
/// Basis ordering is mixed radix with qubits first (most significant) and
/// modes after them; qubit value 1 and photon number n are the digits.
class FockSystem {
 public:
  /// All qubits in |0>, all modes in vacuum.
  FockSystem(int mode_count, int qubit_count = 0, int max_photons = kMaxPhotonsPerMode);

  /// Pure state |psi><psi|; psi is normalized here.
  static FockSystem from_pure(int mode_count, int qubit_count, const Vector& psi,
                              int max_photons = kMaxPhotonsPerMode);
  static FockSystem from_density(int mode_count, int qubit_count, Matrix rho,
                                 int max_photons = kMaxPhotonsPerMode);

  int mode_count() const { return modes_; }
  int qubit_count() const { return qubits_; }
  int max_photons() const { return cutoff_; }
  std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }
  const Matrix& density_matrix() const { return rho_; }

  /// Basis index of the given qubit values and photon numbers.
  std::size_t index(std::span<const int> qubit_values,
                    std::span<const int> photon_numbers) const;

  /// Population of a basis state.
  double population(std::span<const int> qubit_values,
                    std::span<const int> photon_numbers) const;

  /// Matrix element <row|rho|col>.
  Complex element(std::size_t row, std::size_t col) const { return rho_(row, col); }

  double trace() const;

  /// Throws unless unit trace, Hermitian, and positive semidefinite (1e-10).
  void validate() const;

  // Subsystem bookkeeping used by the channel implementations.
  int subsystem_of_mode(int mode) const;
  int subsystem_of_qubit(int qubit) const;
  int subsystem_dim(int subsystem) const;
  int subsystem_count() const { return qubits_ + modes_; }

 private:
  FockSystem(int modes, int qubits, int cutoff, Matrix rho);

  int modes_;
  int qubits_;
  int cutoff_;
  Matrix rho_;

  friend FockSystem apply_local(const FockSystem&, std::span<const int>, const Matrix&);
  friend FockSystem apply_kraus(const FockSystem&, std::span<const int>,
                                std::span<const Matrix>);
  friend Matrix reduced_block(const FockSystem&, std::span<const int>,
                              std::span<const int>, std::span<const int>,
                              std::vector<int>*);
  friend FockSystem keep_subsystems(const FockSystem&, std::span<const int>);
  friend FockSystem with_vacuum_mode(const FockSystem&);
};

struct ClickPattern {
  bool detector_1_clicked = false;
  bool detector_2_clicked = false;

  friend bool operator==(const ClickPattern&, const ClickPattern&) = default;
};

struct ClickOutcome {
  ClickPattern pattern;
  double probability = 0.0;
  /// Normalized state of the unmeasured subsystems; absent when the pattern
  /// has zero probability.
  std::optional<FockSystem> state;
};

struct CountOutcome {
  int count_1 = 0;
  int count_2 = 0;
  double probability = 0.0;
  std::optional<FockSystem> state;
};

/// rho -> U rho U^dagger for an operator acting on the listed subsystems
/// (in the listed order, first most significant).
FockSystem apply_local(const FockSystem& sys, std::span<const int> subsystems,
                       const Matrix& op);

/// rho -> sum_k K_k rho K_k^dagger on the listed subsystems.
FockSystem apply_kraus(const FockSystem& sys, std::span<const int> subsystems,
                       std::span<const Matrix> kraus);

/// Restriction of rho to the block where the listed subsystems take the given
/// values, as an operator on the remaining subsystems. When `kept` is not
/// null it receives the remaining subsystem indices.
Matrix reduced_block(const FockSystem& sys, std::span<const int> subsystems,
                     std::span<const int> row_values, std::span<const int> col_values,
                     std::vector<int>* kept = nullptr);

/// Partial trace onto the listed subsystems (kept in ascending order).
FockSystem keep_subsystems(const FockSystem& sys, std::span<const int> subsystems);

/// Partial trace over the listed modes.
FockSystem trace_out_modes(const FockSystem& sys, std::span<const int> modes);

/// Appends one vacuum mode.
FockSystem with_vacuum_mode(const FockSystem& sys);

/// Balanced beamsplitter mixing two modes:
///   a^dag -> (a^dag + b^dag)/sqrt(2),  b^dag -> (a^dag - b^dag)/sqrt(2).
/// Throws if more than 1e-12 of the population would leave the truncated space.
FockSystem beamsplitter(const FockSystem& sys, int mode_a, int mode_b);

/// Pure-loss bosonic channel with transmissivity `survival`.
FockSystem loss_channel(const FockSystem& sys, int mode, double survival);

/// Pauli-X on a qubit.
FockSystem flip_qubit(const FockSystem& sys, int qubit);

/// Threshold (click / no-click) detection of two modes. Inefficiency is folded
/// in as a loss channel before the projection; dark counts are an independent
/// per-detector click OR-ed with the photon-induced click. The measured modes
/// are traced out of the returned states.
std::vector<ClickOutcome> threshold_measure(const FockSystem& sys, int mode_1, int mode_2,
                                            double efficiency, double dark_count = 0.0);

/// Photon-number-resolving detection of two modes. A dark count adds one count
/// to its detector.
std::vector<CountOutcome> count_measure(const FockSystem& sys, int mode_1, int mode_2,
                                        double efficiency, double dark_count = 0.0);

}  // namespace qrep::fock
