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
#include <vector>

#include "qrep/error.hpp"
#include "qrep/repeater.hpp"

namespace qrep::repeater {
namespace {

constexpr double kTailMass = 1e-12;

// Largest pair age, in rounds, that still passes the cutoff. Zero means no
// pair is ever usable.
double max_valid_age(const AnalyticLinkModel& m) {
  if (std::isinf(m.cutoff)) return std::numeric_limits<double>::infinity();
  return std::floor(m.cutoff / m.attempt_interval * (1.0 + 1e-9));
}

// Expected number of rounds until both links hold valid pairs at the same
// round boundary, starting from two empty links.
double expected_rounds_until_both_held(double p, double max_age) {
  const double q = 1.0 - p;
  // Ages the cutoff can actually reach before the tail mass is negligible.
  const double reachable = std::ceil(std::log(kTailMass * 1e-1) / std::log1p(-p)) + 2.0;
  const bool unlimited = std::isinf(max_age) || max_age > reachable || p == 1.0;

  double expected = 0.0;
  double empty = 1.0;  // both links empty
  if (unlimited) {
    double held = 0.0;  // exactly one link holds a pair
    for (long round = 1;; ++round) {
      const double absorbed = empty * p * p + held * p;
      const double next_held = empty * 2.0 * p * q + held * q;
      empty = empty * q * q;
      held = next_held;
      expected += static_cast<double>(round) * absorbed;
      if (empty + held < kTailMass) break;
    }
    return expected;
  }

  const auto a_max = static_cast<std::size_t>(max_age);
  // held[a] = probability that exactly one link holds a pair of age a.
  std::vector<double> held(a_max + 2, 0.0), next(a_max + 2, 0.0);
  for (long round = 1;; ++round) {
    std::fill(next.begin(), next.end(), 0.0);
    double absorbed = empty * p * p;
    double next_empty = empty * q * q;
    next[1] += empty * 2.0 * p * q;
    for (std::size_t a = 1; a <= a_max; ++a) {
      const double m = held[a];
      if (m == 0.0) continue;
      if (a + 1 <= a_max) {
        absorbed += m * p;
        next[a + 1] += m * q;
      } else {
        // The held pair expires this round; the other link may have just
        // produced a fresh one.
        next[1] += m * p;
        next_empty += m * q;
      }
    }
    empty = next_empty;
    held.swap(next);
    expected += static_cast<double>(round) * absorbed;
    double remaining = empty;
    for (std::size_t a = 1; a <= a_max; ++a) remaining += held[a];
    if (remaining < kTailMass) break;
    require(round < 2'000'000'000L, "expected_chain_time: enumeration did not converge");
  }
  return expected;
}

}  // namespace

double expected_chain_time(const AnalyticLinkModel& model, int num_links) {
  model.validate();
  require(num_links == 1 || num_links == 2,
          "expected_chain_time: only 1 or 2 links are supported analytically");
  const double p = model.round_success_prob();
  require(p > 0.0, "expected_chain_time: success probability must be positive");
  const double max_age = max_valid_age(model);
  require(max_age >= 1.0, "expected_chain_time: cutoff shorter than one attempt interval");

  if (num_links == 1) return model.attempt_interval / p;

  require(model.swap_success_prob > 0.0,
          "expected_chain_time: swap success probability must be positive");
  const double rounds = expected_rounds_until_both_held(p, max_age);
  return rounds * model.attempt_interval / model.swap_success_prob;
}

}  // namespace qrep::repeater
