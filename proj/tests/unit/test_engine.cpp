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
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "qrep/engine.hpp"
#include "qrep/error.hpp"
#include "qrep/event_queue.hpp"
#include "qrep/rng.hpp"
#include "qrep/sweep.hpp"

using namespace qrep;
using namespace qrep::engine;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RepeaterChainConfig chain(std::size_t links, double segment_km, double p,
                          std::size_t modes = 1) {
  RepeaterChainConfig c;
  c.segment_lengths_km.assign(links, segment_km);
  c.hardware.emitter = photonics::EmitterParams::from_lifetime(1e-8);
  c.pulse = generation::EmissionPulse::from_probability(p);
  c.memory.mode_capacity = modes;
  c.memory.spin_t2 = kInf;
  return c;
}

StopCondition pairs(std::uint64_t n) { return {kInf, n}; }

void check_same(const RunStatistics& a, const RunStatistics& b) {
  CHECK(a.delivered_pairs == b.delivered_pairs);
  CHECK(a.elapsed == b.elapsed);
  CHECK(a.rate == b.rate);
  CHECK(a.fidelity_mean == b.fidelity_mean);
  CHECK(a.fidelity_stddev == b.fidelity_stddev);
  CHECK(a.attempts_total == b.attempts_total);
  CHECK(a.per_link_heralds == b.per_link_heralds);
  CHECK(a.per_link_rounds == b.per_link_rounds);
  CHECK(a.per_link_heralded_modes == b.per_link_heralded_modes);
  CHECK(a.resources_consumed == b.resources_consumed);
  CHECK(a.swap_attempts == b.swap_attempts);
  CHECK(a.swap_successes == b.swap_successes);
  CHECK(a.purify_attempts == b.purify_attempts);
  CHECK(a.purify_successes == b.purify_successes);
  CHECK(a.cutoff_discards == b.cutoff_discards);
  CHECK(a.delivery_interval_mean == b.delivery_interval_mean);
  CHECK(a.delivery_interval_stderr == b.delivery_interval_stderr);
}

}  // namespace

TEST_CASE("counter-based random numbers") {
  CHECK(counter_uniform(1, 2, 3) == counter_uniform(1, 2, 3));
  CHECK(counter_uniform(1, 2, 3) != counter_uniform(1, 2, 4));
  CHECK(counter_uniform(1, 2, 3) != counter_uniform(1, 3, 3));
  CHECK(counter_uniform(1, 2, 3, 0) != counter_uniform(1, 2, 3, 1));
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  CHECK(stream_id(StreamKind::kSwap, 7) == ((std::uint64_t{2} << 56) | 7));

  double sum = 0.0, sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = counter_uniform(99, stream_id(StreamKind::kAttempt, 0), i);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
    sum_sq += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum_sq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("event queue ordering") {
  EventQueue q;
  q.push(2.0, EventKind::kSwapReady, 1);
  q.push(1.0, EventKind::kHeraldArrive, 2);
  q.push(1.0, EventKind::kAttemptLaunch, 3);
  q.push(3.0, EventKind::kDelivery, 4);
  CHECK(q.pop().subject == 2);
  CHECK(q.now() == 1.0);
  CHECK(q.pop().subject == 3);
  CHECK(q.pop().subject == 1);
  CHECK_THROWS_AS(q.push(1.5, EventKind::kCutoffExpire, 5), Error);
  CHECK(q.pop().subject == 4);
  CHECK(q.empty());
}

TEST_CASE("configuration checks") {
  CHECK_NOTHROW(chain(2, 50, 0.01).validate());
  RepeaterChainConfig c = chain(2, 50, 0.01);
  c.segment_lengths_km.clear();
  CHECK_THROWS_AS(c.validate(), Error);
  c = chain(2, 50, 0.01);
  c.purification = repeater::PurificationPlan::make(2, 2, 2);
  CHECK_THROWS_AS(c.validate(), Error);
  c = chain(2, 50, 0.01);
  c.memory.recall_mode = memory::RecallMode::kFixedDelay;
  CHECK_THROWS_AS(c.validate(), Error);
  c = chain(2, 50, 0.01);
  c.hardware.emitter = photonics::EmitterParams::from_lifetime(1.0);  // far too narrow
  CHECK_THROWS_AS(c.validate(), Error);
  c = chain(1, 0, 0.01);
  CHECK_THROWS_AS(c.validate(), Error);
  c.pulse_overhead = 1e-6;
  CHECK_NOTHROW(c.validate());
  CHECK(chain(3, 20, 0.01).total_length_km() == 60.0);
  CHECK(chain(3, 20, 0.01).link_attempt_interval(1) == doctest::Approx(1e-4));
  CHECK_THROWS_AS(simulate(chain(1, 10, 0.01), 1, StopCondition{}), Error);
}

TEST_CASE("direct transmission rate") {
  generation::LinkHardware hw;
  hw.detector.efficiency = 0.8;
  CHECK(direct_transmission_rate(0, 1e9, hw) == doctest::Approx(0.8e9));
  hw.detector.efficiency = 1.0;
  CHECK(direct_transmission_rate(100, 1e9, hw) == doctest::Approx(1e7).epsilon(1e-12));
  CHECK(direct_transmission_rate(300, 1e9, hw) == doctest::Approx(1e3).epsilon(1e-12));
  CHECK_THROWS_AS(direct_transmission_rate(-1, 1e9, hw), Error);
}

TEST_CASE("one link with certain success delivers every round") {
  // 1000 modes at q ~ 0.2: a round fails with probability ~1e-97.
  const RepeaterChainConfig c = chain(1, 20, 0.1, 1000);
  const RunStatistics s = simulate(c, 3, pairs(500));
  CHECK(s.delivered_pairs == 500);
  CHECK(s.rate == doctest::Approx(1.0 / c.link_attempt_interval(0)).epsilon(1e-9));
  CHECK(s.delivery_interval_stderr == doctest::Approx(0.0));
}

TEST_CASE("one link follows the geometric waiting law") {
  const RepeaterChainConfig c = chain(1, 20, 0.05);
  const double q = c.link_herald(0).success_prob;
  const double tau = c.link_attempt_interval(0);
  const RunStatistics s = simulate(c, 17, pairs(20000));
  CHECK(std::abs(s.delivery_interval_mean - tau / q) <= 3 * s.delivery_interval_stderr);
  CHECK(std::abs(s.rate - q / tau) <= 3 * s.delivery_interval_stderr * (q / tau) * (q / tau));
}

TEST_CASE("two links agree with the Markov chain") {
  RepeaterChainConfig c = chain(2, 30, 0.05);
  c.station.readout_efficiency = 0.8;
  const double expected = repeater::expected_chain_time(analytic_model(c), 2);
  const RunStatistics s = simulate(c, 5, pairs(10000));
  CAPTURE(expected);
  CAPTURE(s.delivery_interval_mean);
  CHECK(std::abs(s.delivery_interval_mean - expected) <= 3 * s.delivery_interval_stderr);
  CHECK(s.delivered_pairs <= s.swap_successes);
  CHECK(s.swap_successes <= s.swap_attempts);

  c.cutoff = 3 * c.link_attempt_interval(0);
  const double with_cutoff = repeater::expected_chain_time(analytic_model(c), 2);
  const RunStatistics t = simulate(c, 6, pairs(10000));
  CHECK(with_cutoff > expected);
  CHECK(t.cutoff_discards > 0);
  CHECK(std::abs(t.delivery_interval_mean - with_cutoff) <= 3 * t.delivery_interval_stderr);
}

TEST_CASE("multiplexing law") {
  for (std::size_t n : {1u, 4u, 32u}) {
    const RepeaterChainConfig c = chain(2, 40, 0.01, n);
    const double q = c.link_herald(0).success_prob;
    const double expected = 1.0 - std::pow(1.0 - q, double(n));
    const RunStatistics s = simulate(c, 8, pairs(3000));
    for (std::size_t i = 0; i < 2; ++i) {
      const double rounds = double(s.per_link_rounds[i]);
      const double measured = double(s.per_link_heralds[i]) / rounds;
      const double se = std::sqrt(expected * (1 - expected) / rounds);
      CAPTURE(n);
      CHECK(std::abs(measured - expected) <= 3 * se);
      // All heralded modes: binomial with mean N q per round.
      const double modes = double(s.per_link_heralded_modes[i]) / rounds;
      const double mode_se = std::sqrt(double(n) * q * (1 - q) / rounds);
      CHECK(std::abs(modes - double(n) * q) <= 3 * mode_se);
      CHECK(s.per_link_heralded_modes[i] >= s.per_link_heralds[i]);
    }
    CHECK(s.attempts_total == (s.per_link_rounds[0] + s.per_link_rounds[1]) * n);
  }
}

TEST_CASE("fidelity without decoherence matches the heralded state") {
  RepeaterChainConfig c = chain(2, 30, 0.02);
  c.memory.write_efficiency = 0.9;
  c.memory.recall_efficiency = 0.8;
  c.hardware.indistinguishability = 0.95;
  const memory::AfcParams& a = c.memory;
  const PairState stored = attenuate(c.link_herald(0).heralded, a.write_efficiency);
  PairState l = memory::on_demand_readout(stored, 0.0, a);
  PairState r = l;
  r.left_node = NodeId{1};
  r.right_node = NodeId{2};
  const double expected = fidelity(repeater::swap(l, r, c.station).out);
  const RunStatistics s = simulate(c, 9, pairs(300));
  CHECK(s.fidelity_mean == doctest::Approx(expected).epsilon(1e-9));
  CHECK(s.fidelity_stddev < 1e-9);

  const RepeaterChainConfig one = chain(1, 30, 0.02);
  const RunStatistics t = simulate(one, 9, pairs(300));
  CHECK(t.fidelity_mean == doctest::Approx(fidelity(one.link_herald(0).heralded)).epsilon(1e-9));
}

TEST_CASE("spin decoherence lowers the delivered fidelity") {
  RepeaterChainConfig c = chain(2, 50, 0.01);
  const double ideal = simulate(c, 4, pairs(400)).fidelity_mean;
  c.memory.spin_t2 = 1e-3;
  const RunStatistics s = simulate(c, 4, pairs(400));
  CHECK(s.fidelity_mean < ideal);
  CHECK(s.fidelity_mean >= 0.0);
  CHECK(s.fidelity_mean <= 1.0);
  CHECK(s.fidelity_stddev > 0.0);
}

TEST_CASE("determinism") {
  RepeaterChainConfig c = chain(4, 25, 0.02, 3);
  c.cutoff = 5e-3;
  c.memory.spin_t2 = 0.05;
  c.station.readout_efficiency = 0.9;
  check_same(simulate(c, 42, pairs(200)), simulate(c, 42, pairs(200)));
  CHECK(simulate(c, 42, pairs(200)).elapsed != simulate(c, 43, pairs(200)).elapsed);
}

TEST_CASE("longer chains and purification") {
  RepeaterChainConfig c = chain(4, 25, 0.05, 4);
  const RunStatistics s = simulate(c, 10, pairs(200));
  CHECK(s.delivered_pairs == 200);
  CHECK(s.swap_successes >= 3 * s.delivered_pairs);
  CHECK(s.resources_consumed >= 4 * s.delivered_pairs);

  c.station.readout_efficiency = 0.9;
  c.purification = repeater::PurificationPlan::make(2, 2, 2);
  const RunStatistics p = simulate(c, 10, pairs(100));
  CHECK(p.delivered_pairs == 100);
  CHECK(p.purify_attempts > 0);
  CHECK(p.purify_successes <= p.purify_attempts);
  CHECK(p.resources_consumed >= repeater::resource_count(*c.purification) * p.delivered_pairs);
  CHECK(p.fidelity_mean > s.fidelity_mean);
}

TEST_CASE("time limit") {
  const RepeaterChainConfig c = chain(2, 50, 0.01);
  const RunStatistics s = simulate(c, 1, StopCondition{0.5, 0});
  CHECK(s.elapsed == 0.5);
  CHECK(s.rate == doctest::Approx(double(s.delivered_pairs) / 0.5));
  CHECK(s.delivered_pairs > 0);
}

TEST_CASE("pooling") {
  const RepeaterChainConfig c = chain(1, 20, 0.05);
  const RunStatistics a = simulate(c, 1, pairs(300));
  const RunStatistics b = simulate(c, 2, pairs(500));
  check_same(pool({a}), a);
  const RunStatistics ab = pool({a, b});
  CHECK(ab.delivered_pairs == 800);
  CHECK(ab.elapsed == a.elapsed + b.elapsed);
  CHECK(ab.delivery_interval_mean ==
        doctest::Approx((300 * a.delivery_interval_mean + 500 * b.delivery_interval_mean) / 800));
  const double var_a = a.interval_m2, var_b = b.interval_m2;
  const double d = b.delivery_interval_mean - a.delivery_interval_mean;
  CHECK(ab.interval_m2 == doctest::Approx(var_a + var_b + d * d * 300 * 500 / 800));
}

TEST_CASE("sweep") {
  const RepeaterChainConfig base = chain(2, 25, 0.02);
  CHECK(sweep(base, "total_km", {}, 1, 2, pairs(10)).empty());
  CHECK_THROWS_AS(parse_axis("bogus"), Error);
  for (const char* name : {"total_km", "p", "n_modes", "t2", "cutoff", "links"})
    CHECK(axis_name(parse_axis(name)) == name);

  const RepeaterChainConfig split = apply_axis(base, SweepAxis::kTotalKm, 120);
  CHECK(split.segment_lengths_km == std::vector<double>{60, 60});
  const RepeaterChainConfig more = apply_axis(base, SweepAxis::kLinks, 5);
  CHECK(more.segment_lengths_km.size() == 5);
  CHECK(more.total_length_km() == doctest::Approx(50));
  CHECK_THROWS_AS(apply_axis(base, SweepAxis::kModes, 2.5), Error);

  const auto serial = sweep(base, "p", {0.01, 0.03}, 7, 3, pairs(50), 1);
  const auto parallel = sweep(base, "p", {0.01, 0.03}, 7, 3, pairs(50), 4);
  REQUIRE(serial.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(serial[i].value == parallel[i].value);
    check_same(serial[i].stats, parallel[i].stats);
    CHECK(serial[i].stats.delivered_pairs == 150);
  }
  std::vector<RunStatistics> trials;
  for (std::uint64_t t = 0; t < 3; ++t)
    trials.push_back(simulate(apply_axis(base, SweepAxis::kEmissionProb, 0.03),
                              derive_seed(7, (std::uint64_t{1} << 32) | t), pairs(50)));
  check_same(serial[1].stats, pool(trials));
  check_same(run_trials(base, 7, 3, pairs(50), 2), run_trials(base, 7, 3, pairs(50), 1));
}

TEST_CASE("multiplexed sweep scales the rate") {
  const RepeaterChainConfig base = chain(1, 100, 0.01);
  const auto rows = sweep(base, "n_modes", {1, 10}, 3, 4, pairs(1500));
  REQUIRE(rows.size() == 2);
  const double ratio = rows[1].stats.rate / rows[0].stats.rate;
  const double q = base.link_herald(0).success_prob;
  CHECK(ratio == doctest::Approx((1 - std::pow(1 - q, 10)) / q).epsilon(0.1));
}
