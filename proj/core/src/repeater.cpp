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

#include "qrep/repeater.hpp"

#include <algorithm>
#include <cmath>

#include "qrep/error.hpp"
#include "qrep/generation.hpp"

namespace qrep::repeater {

void SwapStation::validate() const {
  require(readout_efficiency >= 0.0 && readout_efficiency <= 1.0,
          "swap station: readout efficiency must lie in [0,1]");
  require(interference >= 0.0 && interference <= 1.0,
          "swap station: interference factor must lie in [0,1]");
  detector.validate();
}

SwapResult swap(const PairState& left, const PairState& right, const SwapStation& station) {
  require(left.right_node == right.left_node, "swap: pairs do not share a middle node");
  left.validate();
  right.validate();
  station.validate();
  const double eta = station.readout_efficiency * station.detector.efficiency;
  const auto f = generation::single_click_factors(eta, station.detector);

  const double wl = left.w_ent, wr = right.w_ent;
  const double vl = 1.0 - wl, vr = 1.0 - wr;
  const double q = 0.25 * wl * wr;

  // Populations of the (A,D) excitation basis for the detector-1 pattern.
  const double pop_01 = q * f.single + vl * 0.5 * wr * f.none;
  const double pop_10 = q * f.single + 0.5 * wl * vr * f.none;
  const double cross = q * left.coherence * right.coherence * f.coherent;
  const double pop_00 = q * f.pair + 0.5 * (vl * wr + wl * vr) * f.single + vl * vr * f.none;
  const double pop_11 = q * f.none;
  const double pattern = pop_01 + pop_10 + pop_00 + pop_11;

  SwapResult r;
  r.herald_prob = 2.0 * pattern;
  const double created = std::max(left.created_at, right.created_at);
  if (!(pattern > 0.0)) {
    r.out = PairState::make(0.0, 0.0, left.sign * right.sign, left.left_node,
                            right.right_node, created);
    return r;
  }
  const double sector = pop_01 + pop_10;
  const double coherence = sector > 0.0 ? 2.0 * cross / sector : 0.0;
  r.out = PairState::make(std::min(1.0, sector / pattern),
                          std::min(1.0, coherence * station.interference),
                          left.sign * right.sign, left.left_node, right.right_node, created);
  return r;
}

std::vector<PairState> vacuum_ratio_decay(const PairState& initial, int swap_count,
                                          const SwapStation& station) {
  require(swap_count >= 1, "vacuum_ratio_decay: swap_count must be at least 1");
  std::vector<PairState> levels;
  PairState current = initial;
  for (int k = 0; k < swap_count; ++k) {
    PairState left = current;
    PairState right = current;
    left.left_node = NodeId{0};
    left.right_node = NodeId{1};
    right.left_node = NodeId{1};
    right.right_node = NodeId{2};
    current = swap(left, right, station).out;
    current.left_node = initial.left_node;
    current.right_node = initial.right_node;
    levels.push_back(current);
  }
  return levels;
}

PurifyResult VacuumFilteringMap::apply(const PairState& a, const PairState& b) const {
  require(a.left_node == b.left_node && a.right_node == b.right_node,
          "purify: pairs must share both endpoints");
  PurifyResult r;
  r.success_prob = a.w_ent * b.w_ent;
  r.out = PairState::make(1.0, a.coherence * b.coherence, a.sign, a.left_node, a.right_node,
                          std::max(a.created_at, b.created_at));
  return r;
}

PurifyResult purify(const PairState& a, const PairState& b) {
  return VacuumFilteringMap{}.apply(a, b);
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    require(base == 0 || r <= std::numeric_limits<std::uint64_t>::max() / base,
            "resource_count: result overflows 64-bit integers");
    r *= base;
  }
  return r;
}

}  // namespace

PurificationPlan PurificationPlan::make(int l, int m, int n) {
  require(l >= 2, "purification plan: L must be at least 2");
  require(m >= 1, "purification plan: M must be at least 1");
  require(n >= 0, "purification plan: n must be non-negative");
  PurificationPlan plan;
  plan.branching_l = l;
  plan.pairs_m = m;
  plan.levels_n = n;
  plan.total_links = checked_pow(static_cast<std::uint64_t>(l), n);
  return plan;
}

void PurificationPlan::validate() const {
  require(branching_l >= 2 && pairs_m >= 1 && levels_n >= 0,
          "purification plan: need L >= 2, M >= 1, n >= 0");
  require(total_links == checked_pow(static_cast<std::uint64_t>(branching_l), levels_n),
          "purification plan: total_links must equal L^n");
}

std::uint64_t resource_count(const PurificationPlan& plan) {
  plan.validate();
  const std::uint64_t lm = checked_pow(static_cast<std::uint64_t>(plan.branching_l), 1) *
                           static_cast<std::uint64_t>(plan.pairs_m);
  return checked_pow(lm, plan.levels_n);
}

double resource_count_polynomial(const PurificationPlan& plan) {
  plan.validate();
  const double n = static_cast<double>(plan.total_links);
  const double exponent =
      std::log(static_cast<double>(plan.pairs_m)) / std::log(static_cast<double>(plan.branching_l)) +
      1.0;
  return std::pow(n, exponent);
}

void AnalyticLinkModel::validate() const {
  require(success_prob_per_attempt >= 0.0 && success_prob_per_attempt <= 1.0,
          "analytic model: success probability must lie in [0,1]");
  require(swap_success_prob >= 0.0 && swap_success_prob <= 1.0,
          "analytic model: swap probability must lie in [0,1]");
  require(attempt_interval > 0.0, "analytic model: attempt interval must be positive");
  require(mode_capacity >= 1, "analytic model: mode capacity must be at least 1");
  require(cutoff > 0.0, "analytic model: cutoff must be positive");
}

double AnalyticLinkModel::round_success_prob() const {
  // 1 - (1-p)^N without cancellation for tiny p.
  return -std::expm1(static_cast<double>(mode_capacity) * std::log1p(-success_prob_per_attempt));
}

}  // namespace qrep::repeater
