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

#include "qrep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qrep/error.hpp"
#include "qrep/rng.hpp"

namespace qrep::engine {

SweepAxis parse_axis(std::string_view name) {
  if (name == "total_km") return SweepAxis::kTotalKm;
  if (name == "p") return SweepAxis::kEmissionProb;
  if (name == "n_modes") return SweepAxis::kModes;
  if (name == "t2") return SweepAxis::kSpinT2;
  if (name == "cutoff") return SweepAxis::kCutoff;
  if (name == "links") return SweepAxis::kLinks;
  throw Error("sweep: unknown axis '" + std::string(name) +
              "' (expected total_km, p, n_modes, t2, cutoff or links)");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTotalKm: return "total_km";
    case SweepAxis::kEmissionProb: return "p";
    case SweepAxis::kModes: return "n_modes";
    case SweepAxis::kSpinT2: return "t2";
    case SweepAxis::kCutoff: return "cutoff";
    case SweepAxis::kLinks: return "links";
  }
  return "?";
}

namespace {

std::size_t as_count(double value, const char* what) {
  require(std::isfinite(value) && value >= 1.0 && std::floor(value) == value,
          std::string("sweep: ") + what + " must be a positive integer");
  return static_cast<std::size_t>(value);
}

}  // namespace

RepeaterChainConfig apply_axis(const RepeaterChainConfig& base, SweepAxis axis, double value) {
  RepeaterChainConfig c = base;
  switch (axis) {
    case SweepAxis::kTotalKm: {
      require(value >= 0.0, "sweep: total_km must be non-negative");
      const std::size_t k = c.segment_lengths_km.size();
      c.segment_lengths_km.assign(k, value / static_cast<double>(k));
      break;
    }
    case SweepAxis::kEmissionProb:
      c.pulse = generation::EmissionPulse::from_probability(value, base.pulse.p_max);
      break;
    case SweepAxis::kModes:
      c.memory.mode_capacity = as_count(value, "n_modes");
      break;
    case SweepAxis::kSpinT2:
      c.memory.spin_t2 = value;
      break;
    case SweepAxis::kCutoff:
      c.cutoff = value;
      break;
    case SweepAxis::kLinks: {
      const std::size_t k = as_count(value, "links");
      const double total = base.total_length_km();
      c.segment_lengths_km.assign(k, total / static_cast<double>(k));
      break;
    }
  }
  c.validate();
  return c;
}

namespace {

std::vector<RunStatistics> run_all(const std::vector<const RepeaterChainConfig*>& configs,
                                   const std::vector<std::uint64_t>& seeds,
                                   const StopCondition& stop, unsigned workers) {
  const std::size_t n = configs.size();
  std::vector<RunStatistics> out(n);
  if (n == 0) return out;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = simulate(*configs[i], seeds[i], stop);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t value_index, int trial) {
  return derive_seed(seed, (static_cast<std::uint64_t>(value_index) << 32) |
                               static_cast<std::uint64_t>(trial));
}

}  // namespace

RunStatistics run_trials(const RepeaterChainConfig& config, std::uint64_t seed, int trials,
                         const StopCondition& stop, unsigned workers) {
  require(trials >= 1, "run_trials: need at least one trial");
  config.validate();
  std::vector<const RepeaterChainConfig*> configs(static_cast<std::size_t>(trials), &config);
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < trials; ++t) seeds.push_back(trial_seed(seed, 0, t));
  return pool(run_all(configs, seeds, stop, workers));
}

std::vector<SweepRow> sweep(const RepeaterChainConfig& base, std::string_view axis,
                            const std::vector<double>& values, std::uint64_t seed, int trials,
                            const StopCondition& stop, unsigned workers) {
  const SweepAxis ax = parse_axis(axis);
  require(trials >= 1, "sweep: need at least one trial");
  std::vector<SweepRow> rows;
  for (double v : values) {
    SweepRow row;
    row.value = v;
    row.config = apply_axis(base, ax, v);
    rows.push_back(std::move(row));
  }
  std::vector<const RepeaterChainConfig*> configs;
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int t = 0; t < trials; ++t) {
      configs.push_back(&rows[r].config);
      seeds.push_back(trial_seed(seed, r, t));
    }
  }
  const std::vector<RunStatistics> all = run_all(configs, seeds, stop, workers);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto begin = all.begin() + static_cast<std::ptrdiff_t>(r * static_cast<std::size_t>(trials));
    rows[r].stats = pool(std::vector<RunStatistics>(begin, begin + trials));
  }
  return rows;
}

}  // namespace qrep::engine
