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

#include <benchmark/benchmark.h>

#include "qrep/engine.hpp"
#include "qrep/fock.hpp"
#include "qrep/generation.hpp"
#include "qrep/repeater.hpp"

namespace {

using namespace qrep;

generation::LinkHardware link_hardware() {
  generation::LinkHardware hw;
  hw.half_length_km = 25;
  hw.detector.efficiency = 0.9;
  hw.detector.dark_count_prob_per_gate = 1e-6;
  return hw;
}

void BM_DlczHerald(benchmark::State& state) {
  const auto hw = link_hardware();
  const auto pulse = generation::EmissionPulse::from_probability(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(generation::dlcz_herald(pulse, hw));
}
BENCHMARK(BM_DlczHerald);

void BM_SingleEmitterHerald(benchmark::State& state) {
  const auto hw = link_hardware();
  for (auto _ : state) benchmark::DoNotOptimize(generation::single_emitter_herald(hw, 0.8));
}
BENCHMARK(BM_SingleEmitterHerald);

void BM_Swap(benchmark::State& state) {
  const PairState l = PairState::make(0.9, 0.95, 1, NodeId{0}, NodeId{1});
  const PairState r = PairState::make(0.85, 0.9, -1, NodeId{1}, NodeId{2});
  repeater::SwapStation st;
  st.readout_efficiency = 0.9;
  for (auto _ : state) benchmark::DoNotOptimize(repeater::swap(l, r, st));
}
BENCHMARK(BM_Swap);

// The density-matrix route the closed forms are checked against: loss,
// beamsplitter and detection on two qubits and two modes.
void BM_FockHerald(benchmark::State& state) {
  fock::Vector psi = fock::Vector::Zero(36);
  const double p = 0.01;
  const double amp[2] = {std::sqrt(1 - p), std::sqrt(p)};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) psi(((a * 2 + b) * 3 + a) * 3 + b) = amp[a] * amp[b];
  const auto sys = fock::FockSystem::from_pure(2, 2, psi);
  for (auto _ : state) {
    auto s = fock::loss_channel(sys, 0, 0.3);
    s = fock::loss_channel(s, 1, 0.3);
    s = fock::beamsplitter(s, 0, 1);
    benchmark::DoNotOptimize(fock::threshold_measure(s, 0, 1, 0.9, 1e-6));
  }
}
BENCHMARK(BM_FockHerald);

void BM_ExpectedChainTime(benchmark::State& state) {
  repeater::AnalyticLinkModel m;
  m.success_prob_per_attempt = 1e-3;
  m.attempt_interval = 2.5e-4;
  m.mode_capacity = 10;
  m.swap_success_prob = 0.5;
  m.cutoff = state.range(0) * m.attempt_interval;
  for (auto _ : state) benchmark::DoNotOptimize(repeater::expected_chain_time(m, 2));
}
BENCHMARK(BM_ExpectedChainTime)->Arg(10)->Arg(1000);

void BM_Simulate(benchmark::State& state) {
  engine::RepeaterChainConfig c;
  c.segment_lengths_km.assign(static_cast<std::size_t>(state.range(0)), 50.0);
  c.hardware.emitter = photonics::EmitterParams::from_lifetime(1e-8);
  c.memory.mode_capacity = 10;
  c.memory.spin_t2 = 0.1;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto s = engine::simulate(c, seed++, {1e300, 100});
    benchmark::DoNotOptimize(s.rate);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
