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

#include "qrep/pair_state.hpp"

#include <cmath>
#include <limits>

#include "qrep/error.hpp"

namespace qrep {

PairState PairState::make(double w_ent, double coherence, int sign, NodeId left,
                          NodeId right, double created_at) {
  PairState ps;
  ps.w_ent = w_ent;
  ps.w_vac = 1.0 - w_ent;
  ps.coherence = coherence;
  ps.sign = sign;
  ps.left_node = left;
  ps.right_node = right;
  ps.created_at = created_at;
  ps.validate();
  return ps;
}

void PairState::validate() const {
  require(w_ent >= -1e-12 && w_vac >= -1e-12, "pair state: negative weight");
  require(std::abs(w_ent + w_vac - 1.0) <= 1e-12, "pair state: weights must sum to 1");
  require(coherence >= 0.0 && coherence <= 1.0 + 1e-12,
          "pair state: coherence must lie in [0,1]");
  require(sign == 1 || sign == -1, "pair state: sign must be +1 or -1");
}

double PairState::ratio() const {
  if (w_vac <= 0.0) return std::numeric_limits<double>::infinity();
  return w_ent / w_vac;
}

double fidelity(const PairState& ps) { return ps.w_ent * (1.0 + ps.coherence) / 2.0; }

PairState decohere(const PairState& ps, double elapsed, double t2_spin) {
  require(elapsed >= 0.0, "decohere: elapsed time must be non-negative");
  require(t2_spin > 0.0, "decohere: t2_spin must be positive");
  PairState out = ps;
  if (!std::isinf(t2_spin)) out.coherence = ps.coherence * std::exp(-elapsed / t2_spin);
  return out;
}

PairState attenuate(const PairState& ps, double efficiency) {
  require(efficiency >= 0.0 && efficiency <= 1.0, "attenuate: efficiency must lie in [0,1]");
  PairState out = ps;
  out.w_ent = ps.w_ent * efficiency;
  out.w_vac = 1.0 - out.w_ent;
  return out;
}

}  // namespace qrep
