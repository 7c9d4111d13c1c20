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

namespace qrep {

enum class NodeId : std::uint32_t {};

constexpr std::uint32_t to_index(NodeId n) { return static_cast<std::uint32_t>(n); }

/// Heralded two-node state
///
///   rho = w_ent |u1±><u1±|_v + w_vac |00><00|,
///
/// where |u1±> = (|01> ± |10>)/sqrt(2) in the excitation basis of the two
/// nodes and the subscript v means its off-diagonal terms are damped by the
/// coherence factor v. Anything outside the single-excitation sector is
/// folded into w_vac.
struct PairState {
  double w_ent = 1.0;
  double w_vac = 0.0;
  double coherence = 1.0;
  int sign = +1;
  double created_at = 0.0;  // s
  NodeId left_node{0};
  NodeId right_node{1};

  /// Entangled weight w, vacuum weight 1 - w.
  static PairState make(double w_ent, double coherence, int sign = +1,
                        NodeId left = NodeId{0}, NodeId right = NodeId{1},
                        double created_at = 0.0);

  void validate() const;

  /// w_ent / w_vac, +infinity when w_vac is zero.
  double ratio() const;
};

/// Overlap with the target Bell state: w_ent (1 + coherence) / 2.
double fidelity(const PairState& ps);

/// coherence <- coherence * exp(-elapsed / t2_spin). Weights are unchanged.
/// t2_spin may be +infinity (no decay).
PairState decohere(const PairState& ps, double elapsed, double t2_spin);

/// Moves a fraction (1 - efficiency) of the entangled weight into the vacuum
/// component, the signature of an unheralded loss event.
PairState attenuate(const PairState& ps, double efficiency);

}  // namespace qrep
