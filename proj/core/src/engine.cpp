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

#include "qrep/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrep/error.hpp"
#include "qrep/event_queue.hpp"
#include "qrep/rng.hpp"

namespace qrep::engine {

using generation::HeraldResult;
using generation::LinkHardware;
using repeater::PurificationPlan;

double RepeaterChainConfig::total_length_km() const {
  return std::accumulate(segment_lengths_km.begin(), segment_lengths_km.end(), 0.0);
}

LinkHardware RepeaterChainConfig::link_hardware(std::size_t i) const {
  require(i < segment_lengths_km.size(), "chain config: link index out of range");
  LinkHardware hw = hardware;
  hw.fiber = fiber;
  hw.half_length_km = segment_lengths_km[i] / 2.0;
  return hw;
}

HeraldResult RepeaterChainConfig::link_herald(std::size_t i) const {
  const LinkHardware hw = link_hardware(i);
  if (protocol == Protocol::kDlcz) return generation::dlcz_herald(pulse, hw);
  return generation::single_emitter_herald(hw, round_efficiency);
}

double RepeaterChainConfig::link_attempt_interval(std::size_t i) const {
  return generation::attempt_interval(link_hardware(i), pulse_overhead);
}

void RepeaterChainConfig::validate() const {
  require(!segment_lengths_km.empty(), "chain config: at least one segment is required");
  for (double len : segment_lengths_km) {
    require(std::isfinite(len) && len >= 0.0, "chain config: segment lengths must be >= 0 km");
  }
  fiber.validate();
  hardware.validate();
  memory.validate();
  require(memory.recall_mode == memory::RecallMode::kOnDemand,
          "chain config: the chain needs on-demand recall");
  if (protocol == Protocol::kDlcz) pulse.validate();
  require(round_efficiency >= 0.0 && round_efficiency <= 1.0,
          "chain config: round efficiency must lie in [0,1]");
  station.validate();
  if (purification) {
    purification->validate();
    require(purification->total_links == segment_lengths_km.size(),
            "chain config: purification total_links must equal the number of segments");
  }
  require(cutoff > 0.0, "chain config: cutoff must be positive");
  require(std::isfinite(pulse_overhead) && pulse_overhead >= 0.0,
          "chain config: pulse overhead must be non-negative");
  for (std::size_t i = 0; i < segment_lengths_km.size(); ++i) {
    require(link_attempt_interval(i) > 0.0,
            "chain config: attempt interval must be positive (zero length and overhead)");
  }
  require(memory::admits_bandwidth(memory, photonics::photon_bandwidth_hz(hardware.emitter)),
          "chain config: photon bandwidth does not fit the memory comb");
}

double direct_transmission_rate(double total_km, double source_rate, const LinkHardware& hw) {
  require(total_km >= 0.0, "direct_transmission_rate: length must be non-negative");
  require(source_rate > 0.0, "direct_transmission_rate: source rate must be positive");
  hw.fiber.validate();
  hw.detector.validate();
  return source_rate * photonics::fiber_transmission(total_km, hw.fiber) * hw.detector.efficiency;
}

repeater::AnalyticLinkModel analytic_model(const RepeaterChainConfig& config) {
  config.validate();
  repeater::AnalyticLinkModel m;
  const HeraldResult h = config.link_herald(0);
  m.success_prob_per_attempt = h.success_prob;
  m.attempt_interval = config.link_attempt_interval(0);
  m.mode_capacity = config.memory.mode_capacity;
  m.cutoff = config.cutoff;
  const memory::AfcParams& a = config.memory;
  const PairState stored =
      attenuate(h.heralded, a.write_efficiency * a.spinwave_transfer_efficiency);
  PairState left = memory::on_demand_readout(stored, 0.0, a);
  left.left_node = NodeId{0};
  left.right_node = NodeId{1};
  PairState right = left;
  right.left_node = NodeId{1};
  right.right_node = NodeId{2};
  m.swap_success_prob = repeater::swap(left, right, config.station).herald_prob;
  return m;
}

namespace {

constexpr double kGraceFraction = 1e-6;

// A pair held by a unit, spanning child slots [first, end).
struct Block {
  std::size_t first = 0;
  std::size_t end = 0;
  PairState pair;
  double last_update = 0.0;
  // First time at which the pair no longer passes the cutoff.
  double expire_at = std::numeric_limits<double>::infinity();
  double grace = 0.0;
  // Elementary pairs still sitting in a link memory.
  int link = -1;
  std::size_t mode = 0;
  std::uint64_t elementary = 1;
  std::uint64_t id = 0;
};

// Node of the connection tree. Leaves are links; inner units join their
// children greedily and distill pairs_m raw pairs into one.
struct Unit {
  int parent = -1;
  std::size_t slot = 0;  // index among the parent's children
  int link = -1;         // leaf only
  std::size_t first_link = 0;
  std::vector<int> children;
  int pairs_m = 1;
  std::vector<std::optional<Block>> by_start;
  std::vector<int> end_to_start;
  std::vector<Block> buffer;
  std::uint64_t purify_count = 0;
};

struct LinkState {
  HeraldResult herald;
  double interval = 0.0;
  double log_fail = 0.0;  // log(1 - q) per mode
  double base_time = 0.0;
  std::uint64_t step = 0;  // rounds since base_time
  std::uint64_t round = 0; // global round counter, indexes the random stream
  double max_age = std::numeric_limits<double>::infinity();  // rounds
};

class Simulator {
 public:
  Simulator(const RepeaterChainConfig& config, std::uint64_t seed, const StopCondition& stop)
      : cfg_(config), seed_(seed), stop_(stop) {}

  RunStatistics run();

 private:
  int build_unit(int parent, std::size_t slot, std::size_t first_link, int level);
  void reset_unit(int u, double now);
  void launch(std::size_t link, double now);
  void on_attempt(const Event& e);
  void on_herald(const Event& e);
  void on_swap(const Event& e);
  void on_purify(const Event& e);
  void on_expire(const Event& e);
  void on_delivery(const Event& e);

  void hand_up(int u, Block block, double now);
  void add_block(int u, Block block, double now);
  void remove_block(int u, std::size_t first);
  void consume(int u, const Block& b, double now);
  void release(Block& b);
  void raw_pair_ready(int u, Block block, double now);
  void schedule_expiry(int u, const Block& b);
  PairState read_out(Block& b, double now);
  PairState current(const Block& b, double now) const;
  bool still_valid(const Block& b, double now) const {
    return now < b.expire_at - b.grace;
  }

  const RepeaterChainConfig& cfg_;
  std::uint64_t seed_;
  StopCondition stop_;
  EventQueue queue_;
  std::vector<Unit> units_;
  std::vector<LinkState> links_;
  std::vector<memory::AfcMemory> memories_;
  std::vector<std::uint64_t> swap_counts_;  // per node
  std::vector<int> leaf_of_link_;
  std::optional<Block> delivered_;
  std::uint64_t next_block_id_ = 1;
  int root_ = 0;

  RunStatistics stats_;
  double fid_mean_ = 0.0;
  double last_delivery_ = 0.0;
  double int_mean_ = 0.0;
};

int Simulator::build_unit(int parent, std::size_t slot, std::size_t first_link, int level) {
  const int id = static_cast<int>(units_.size());
  units_.emplace_back();
  units_[id].parent = parent;
  units_[id].slot = slot;
  units_[id].first_link = first_link;
  const std::size_t k = cfg_.num_links();
  if (level == 0) {
    units_[id].link = static_cast<int>(first_link);
    leaf_of_link_[first_link] = id;
    return id;
  }
  std::size_t n_children = k;
  std::size_t child_span = 1;
  int m = 1;
  if (cfg_.purification) {
    n_children = static_cast<std::size_t>(cfg_.purification->branching_l);
    child_span = 1;
    for (int i = 1; i < level; ++i) child_span *= n_children;
    m = cfg_.purification->pairs_m;
  }
  std::vector<int> children;
  for (std::size_t c = 0; c < n_children; ++c) {
    children.push_back(build_unit(id, c, first_link + c * child_span, level - 1));
  }
  Unit& u = units_[id];
  u.children = std::move(children);
  u.pairs_m = m;
  u.by_start.assign(n_children, std::nullopt);
  u.end_to_start.assign(n_children + 1, -1);
  return id;
}

void Simulator::launch(std::size_t link, double now) {
  LinkState& ls = links_[link];
  ls.base_time = now;
  ls.step = 0;
  queue_.push(now, EventKind::kAttemptLaunch, static_cast<std::uint32_t>(link));
}

void Simulator::reset_unit(int u, double now) {
  Unit& unit = units_[u];
  if (unit.link >= 0) {
    launch(static_cast<std::size_t>(unit.link), now);
    return;
  }
  for (auto& b : unit.by_start) {
    if (b) {
      stats_.resources_consumed += b->elementary;
      release(*b);
      b.reset();
    }
  }
  std::fill(unit.end_to_start.begin(), unit.end_to_start.end(), -1);
  for (Block& b : unit.buffer) stats_.resources_consumed += b.elementary;
  unit.buffer.clear();
  for (int c : unit.children) reset_unit(c, now);
}

void Simulator::on_attempt(const Event& e) {
  const std::size_t i = e.subject;
  LinkState& ls = links_[i];
  const std::uint64_t round = ls.round++;
  const std::uint64_t stream = stream_id(StreamKind::kAttempt, i);
  const std::uint64_t n = cfg_.memory.mode_capacity;
  stats_.attempts_total += n;
  stats_.per_link_rounds[i] += 1;
  // Index of the first successful mode; the round succeeds if it is < N.
  const double u = counter_uniform(seed_, stream, round, 0);
  bool success = false;
  if (ls.herald.success_prob >= 1.0) {
    success = true;
  } else if (ls.herald.success_prob > 0.0) {
    success = std::floor(std::log(u) / ls.log_fail) < static_cast<double>(n);
  }
  const bool flip = counter_uniform(seed_, stream, round, 1) < 0.5;
  // Every mode that heralded, found by geometric jumps past the first one.
  std::uint64_t heralded = 0;
  if (success) {
    heralded = 1;
    if (ls.herald.success_prob < 1.0) {
      double index = std::floor(std::log(u) / ls.log_fail);
      for (std::uint64_t lane = 2;; ++lane) {
        const double v = counter_uniform(seed_, stream, round, lane);
        index += 1.0 + std::floor(std::log(v) / ls.log_fail);
        if (index >= static_cast<double>(n)) break;
        ++heralded;
      }
    } else {
      heralded = n;
    }
  }
  const double arrive = ls.base_time + static_cast<double>(ls.step + 1) * ls.interval;
  const std::uint64_t payload = (success ? 1u : 0u) | (flip ? 2u : 0u) | (heralded << 2);
  queue_.push(arrive, EventKind::kHeraldArrive, e.subject, payload);
}

void Simulator::on_herald(const Event& e) {
  const std::size_t i = e.subject;
  LinkState& ls = links_[i];
  const double launched = ls.base_time + static_cast<double>(ls.step) * ls.interval;
  ls.step += 1;
  if ((e.payload & 1u) == 0) {
    queue_.push(e.time, EventKind::kAttemptLaunch, e.subject);
    return;
  }
  stats_.per_link_heralds[i] += 1;
  stats_.per_link_heralded_modes[i] += e.payload >> 2;
  PairState pair = ls.herald.heralded;
  if (e.payload & 2u) pair.sign = -pair.sign;
  pair.left_node = NodeId{static_cast<std::uint32_t>(i)};
  pair.right_node = NodeId{static_cast<std::uint32_t>(i + 1)};
  pair.created_at = launched;
  const memory::StoreOutcome stored = memories_[i].store(pair, launched);
  require(stored.accepted(), "simulate: link memory refused a heralded pair");

  Block b;
  b.pair = memories_[i].peek(stored.mode_index).pair;
  b.last_update = launched;
  b.link = static_cast<int>(i);
  b.mode = stored.mode_index;
  b.grace = kGraceFraction * ls.interval;
  if (std::isfinite(ls.max_age)) b.expire_at = launched + (ls.max_age + 1.0) * ls.interval;
  b.id = next_block_id_++;

  hand_up(leaf_of_link_[i], std::move(b), e.time);
}

void Simulator::hand_up(int u, Block block, double now) {
  const Unit& unit = units_[u];
  if (unit.parent < 0) {
    require(!delivered_, "simulate: root already holds a pair");
    delivered_ = std::move(block);
    queue_.push(now, EventKind::kDelivery, static_cast<std::uint32_t>(u), delivered_->id);
    return;
  }
  block.first = unit.slot;
  block.end = unit.slot + 1;
  add_block(unit.parent, std::move(block), now);
}

void Simulator::schedule_expiry(int u, const Block& b) {
  if (!std::isfinite(b.expire_at)) return;
  queue_.push(std::max(b.expire_at, queue_.now()), EventKind::kCutoffExpire,
              static_cast<std::uint32_t>(u), b.id);
}

void Simulator::add_block(int u, Block block, double now) {
  Unit& unit = units_[u];
  const std::size_t first = block.first;
  const std::size_t end = block.end;
  require(!unit.by_start[first], "simulate: slot already holds a pair");
  schedule_expiry(u, block);
  unit.by_start[first] = std::move(block);
  unit.end_to_start[end] = static_cast<int>(first);
  if (first == 0 && end == unit.children.size()) {
    Block full = std::move(*unit.by_start[first]);
    remove_block(u, first);
    raw_pair_ready(u, std::move(full), now);
    return;
  }
  if (first > 0) queue_.push(now, EventKind::kSwapReady, static_cast<std::uint32_t>(u), first);
  if (end < unit.children.size()) {
    queue_.push(now, EventKind::kSwapReady, static_cast<std::uint32_t>(u), end);
  }
}

void Simulator::remove_block(int u, std::size_t first) {
  Unit& unit = units_[u];
  const std::size_t end = unit.by_start[first]->end;
  unit.by_start[first].reset();
  unit.end_to_start[end] = -1;
}

void Simulator::release(Block& b) {
  if (b.link >= 0) {
    memories_[static_cast<std::size_t>(b.link)].discard(b.mode);
    b.link = -1;
  }
}

void Simulator::consume(int u, const Block& b, double now) {
  for (std::size_t s = b.first; s < b.end; ++s) reset_unit(units_[u].children[s], now);
}

PairState Simulator::read_out(Block& b, double now) {
  if (b.link >= 0) {
    const PairState out = memories_[static_cast<std::size_t>(b.link)].retrieve(b.mode, now);
    b.link = -1;
    return out;
  }
  return memory::on_demand_readout(b.pair, now - b.last_update, cfg_.memory);
}

PairState Simulator::current(const Block& b, double now) const {
  if (b.link >= 0) {
    const memory::StoredMode& rec = memories_[static_cast<std::size_t>(b.link)].peek(b.mode);
    return decohere(rec.pair, now - rec.stored_at, cfg_.memory.spin_t2);
  }
  return decohere(b.pair, now - b.last_update, cfg_.memory.spin_t2);
}

void Simulator::on_swap(const Event& e) {
  const int u = static_cast<int>(e.subject);
  Unit& unit = units_[u];
  const std::size_t boundary = e.payload;
  const int left_start = unit.end_to_start[boundary];
  if (left_start < 0 || !unit.by_start[boundary]) return;
  Block left = std::move(*unit.by_start[static_cast<std::size_t>(left_start)]);
  Block right = std::move(*unit.by_start[boundary]);
  remove_block(u, static_cast<std::size_t>(left_start));
  remove_block(u, boundary);

  // Stale pairs are dropped here as well, so tie order against the expiry
  // event does not matter.
  const bool left_ok = still_valid(left, e.time);
  const bool right_ok = still_valid(right, e.time);
  if (!left_ok || !right_ok) {
    Block* blocks[2] = {&left, &right};
    const bool ok[2] = {left_ok, right_ok};
    for (int k = 0; k < 2; ++k) {
      if (ok[k]) {
        const std::size_t first = blocks[k]->first;
        const std::size_t end = blocks[k]->end;
        unit.by_start[first] = std::move(*blocks[k]);
        unit.end_to_start[end] = static_cast<int>(first);
      } else {
        stats_.cutoff_discards += 1;
        stats_.resources_consumed += blocks[k]->elementary;
        release(*blocks[k]);
        consume(u, *blocks[k], e.time);
      }
    }
    return;
  }

  const std::size_t node = units_[unit.children[boundary]].first_link;
  const std::uint64_t count = swap_counts_[node]++;
  const std::uint64_t stream = stream_id(StreamKind::kSwap, node);
  const PairState a = read_out(left, e.time);
  const PairState b = read_out(right, e.time);
  const repeater::SwapResult res = repeater::swap(a, b, cfg_.station);
  stats_.swap_attempts += 1;
  if (counter_uniform(seed_, stream, count, 0) > res.herald_prob) {
    stats_.resources_consumed += left.elementary + right.elementary;
    consume(u, left, e.time);
    consume(u, right, e.time);
    return;
  }
  stats_.swap_successes += 1;
  Block merged;
  merged.first = left.first;
  merged.end = right.end;
  merged.pair = res.out;
  if (counter_uniform(seed_, stream, count, 1) < 0.5) merged.pair.sign = -merged.pair.sign;
  merged.last_update = e.time;
  merged.expire_at = std::min(left.expire_at, right.expire_at);
  merged.grace = std::min(left.grace, right.grace);
  merged.elementary = left.elementary + right.elementary;
  merged.id = next_block_id_++;
  add_block(u, std::move(merged), e.time);
}

void Simulator::raw_pair_ready(int u, Block block, double now) {
  Unit& unit = units_[u];
  if (unit.pairs_m <= 1) {
    hand_up(u, std::move(block), now);
    return;
  }
  block.pair = current(block, now);
  release(block);
  block.last_update = now;
  unit.buffer.push_back(std::move(block));
  if (unit.buffer.size() < static_cast<std::size_t>(unit.pairs_m)) {
    for (int c : unit.children) reset_unit(c, now);
  } else {
    queue_.push(now, EventKind::kPurifyReady, static_cast<std::uint32_t>(u));
  }
}

void Simulator::on_purify(const Event& e) {
  const int u = static_cast<int>(e.subject);
  Unit& unit = units_[u];
  if (unit.buffer.size() < static_cast<std::size_t>(unit.pairs_m)) return;
  const auto stale = std::remove_if(unit.buffer.begin(), unit.buffer.end(),
                                    [&](const Block& b) { return !still_valid(b, e.time); });
  if (stale != unit.buffer.end()) {
    for (auto it = stale; it != unit.buffer.end(); ++it) {
      stats_.cutoff_discards += 1;
      stats_.resources_consumed += it->elementary;
    }
    unit.buffer.erase(stale, unit.buffer.end());
    for (int c : unit.children) reset_unit(c, e.time);
    return;
  }
  const std::uint64_t stream = stream_id(StreamKind::kPurify, static_cast<std::uint64_t>(u));
  Block acc = std::move(unit.buffer.front());
  acc.pair = current(acc, e.time);
  for (std::size_t k = 1; k < unit.buffer.size(); ++k) {
    Block& next = unit.buffer[k];
    const repeater::PurifyResult r = repeater::purify(acc.pair, current(next, e.time));
    stats_.purify_attempts += 1;
    if (counter_uniform(seed_, stream, unit.purify_count++, 0) > r.success_prob) {
      stats_.resources_consumed += acc.elementary;
      for (std::size_t j = k; j < unit.buffer.size(); ++j) {
        stats_.resources_consumed += unit.buffer[j].elementary;
      }
      unit.buffer.clear();
      for (int c : unit.children) reset_unit(c, e.time);
      return;
    }
    stats_.purify_successes += 1;
    acc.pair = r.out;
    acc.expire_at = std::min(acc.expire_at, next.expire_at);
    acc.grace = std::min(acc.grace, next.grace);
    acc.elementary += next.elementary;
  }
  unit.buffer.clear();
  acc.last_update = e.time;
  acc.id = next_block_id_++;
  hand_up(u, std::move(acc), e.time);
}

void Simulator::on_expire(const Event& e) {
  const int u = static_cast<int>(e.subject);
  Unit& unit = units_[u];
  for (std::size_t s = 0; s < unit.by_start.size(); ++s) {
    if (unit.by_start[s] && unit.by_start[s]->id == e.payload) {
      Block b = std::move(*unit.by_start[s]);
      remove_block(u, s);
      stats_.cutoff_discards += 1;
      stats_.resources_consumed += b.elementary;
      release(b);
      consume(u, b, e.time);
      return;
    }
  }
  // Buffered raw pairs are checked when the purification fires.
}

void Simulator::on_delivery(const Event& e) {
  if (!delivered_ || delivered_->id != e.payload) return;
  Block b = std::move(*delivered_);
  delivered_.reset();
  const double f = fidelity(current(b, e.time));
  release(b);
  stats_.resources_consumed += b.elementary;
  stats_.delivered_pairs += 1;
  const double n = static_cast<double>(stats_.delivered_pairs);
  const double df = f - fid_mean_;
  fid_mean_ += df / n;
  stats_.fidelity_m2 += df * (f - fid_mean_);
  const double interval = e.time - last_delivery_;
  last_delivery_ = e.time;
  const double di = interval - int_mean_;
  int_mean_ += di / n;
  stats_.interval_m2 += di * (interval - int_mean_);
  reset_unit(root_, e.time);
}

RunStatistics Simulator::run() {
  cfg_.validate();
  require(stop_.max_time > 0.0, "simulate: max_time must be positive");
  require(std::isfinite(stop_.max_time) || stop_.max_pairs > 0,
          "simulate: need a finite max_time or a positive max_pairs");

  const std::size_t k = cfg_.num_links();
  links_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    LinkState& ls = links_[i];
    ls.herald = cfg_.link_herald(i);
    ls.interval = cfg_.link_attempt_interval(i);
    ls.log_fail = std::log1p(-ls.herald.success_prob);
    if (std::isfinite(cfg_.cutoff)) {
      ls.max_age = std::floor(cfg_.cutoff / ls.interval * (1.0 + 1e-9));
      require(ls.max_age >= 1.0, "simulate: cutoff shorter than one attempt interval");
    }
    memories_.emplace_back(cfg_.memory);
    if (!std::isfinite(stop_.max_time)) {
      require(ls.herald.success_prob > 0.0,
              "simulate: a link never heralds, so max_pairs cannot be reached");
    }
  }
  swap_counts_.assign(k + 1, 0);
  leaf_of_link_.assign(k, -1);
  stats_.per_link_heralds.assign(k, 0);
  stats_.per_link_rounds.assign(k, 0);
  stats_.per_link_heralded_modes.assign(k, 0);

  int levels = 1;
  if (cfg_.purification) levels = cfg_.purification->levels_n;
  if (k == 1 && !cfg_.purification) levels = 0;
  root_ = build_unit(-1, 0, 0, levels);
  reset_unit(root_, 0.0);

  double clock = 0.0;
  bool hit_pairs = false;
  while (!queue_.empty()) {
    if (queue_.top().time > stop_.max_time) break;
    const Event e = queue_.pop();
    clock = e.time;
    switch (e.kind) {
      case EventKind::kAttemptLaunch: on_attempt(e); break;
      case EventKind::kHeraldArrive: on_herald(e); break;
      case EventKind::kSwapReady: on_swap(e); break;
      case EventKind::kPurifyReady: on_purify(e); break;
      case EventKind::kCutoffExpire: on_expire(e); break;
      case EventKind::kDelivery: on_delivery(e); break;
    }
    if (stop_.max_pairs > 0 && stats_.delivered_pairs >= stop_.max_pairs) {
      hit_pairs = true;
      break;
    }
  }
  stats_.elapsed = hit_pairs ? clock : stop_.max_time;
  if (!hit_pairs && !std::isfinite(stats_.elapsed)) stats_.elapsed = clock;

  const double n = static_cast<double>(stats_.delivered_pairs);
  stats_.rate = stats_.elapsed > 0.0 ? n / stats_.elapsed : 0.0;
  stats_.fidelity_mean = fid_mean_;
  stats_.fidelity_stddev = n > 1 ? std::sqrt(stats_.fidelity_m2 / (n - 1.0)) : 0.0;
  stats_.delivery_interval_mean = int_mean_;
  stats_.delivery_interval_stderr =
      n > 1 ? std::sqrt(stats_.interval_m2 / (n - 1.0)) / std::sqrt(n) : 0.0;
  return stats_;
}

}  // namespace

RunStatistics simulate(const RepeaterChainConfig& config, std::uint64_t seed,
                       const StopCondition& stop) {
  Simulator sim(config, seed, stop);
  return sim.run();
}

RunStatistics pool(const std::vector<RunStatistics>& runs) {
  RunStatistics out;
  double fid_mean = 0.0;
  double int_mean = 0.0;
  double total = 0.0;
  for (const RunStatistics& r : runs) {
    out.elapsed += r.elapsed;
    out.attempts_total += r.attempts_total;
    out.resources_consumed += r.resources_consumed;
    out.swap_attempts += r.swap_attempts;
    out.swap_successes += r.swap_successes;
    out.purify_attempts += r.purify_attempts;
    out.purify_successes += r.purify_successes;
    out.cutoff_discards += r.cutoff_discards;
    if (out.per_link_heralds.size() < r.per_link_heralds.size()) {
      out.per_link_heralds.resize(r.per_link_heralds.size(), 0);
      out.per_link_rounds.resize(r.per_link_rounds.size(), 0);
      out.per_link_heralded_modes.resize(r.per_link_heralded_modes.size(), 0);
    }
    for (std::size_t i = 0; i < r.per_link_heralds.size(); ++i) {
      out.per_link_heralds[i] += r.per_link_heralds[i];
      out.per_link_rounds[i] += r.per_link_rounds[i];
      out.per_link_heralded_modes[i] += r.per_link_heralded_modes[i];
    }
    if (r.delivered_pairs == 0) continue;
    // Chan et al. parallel update of mean and M2.
    const double nb = static_cast<double>(r.delivered_pairs);
    const double na = total;
    total += nb;
    const double df = r.fidelity_mean - fid_mean;
    fid_mean += df * nb / total;
    out.fidelity_m2 += r.fidelity_m2 + df * df * na * nb / total;
    const double di = r.delivery_interval_mean - int_mean;
    int_mean += di * nb / total;
    out.interval_m2 += r.interval_m2 + di * di * na * nb / total;
    out.delivered_pairs += r.delivered_pairs;
  }
  const double n = static_cast<double>(out.delivered_pairs);
  out.rate = out.elapsed > 0.0 ? n / out.elapsed : 0.0;
  out.fidelity_mean = fid_mean;
  out.fidelity_stddev = n > 1 ? std::sqrt(out.fidelity_m2 / (n - 1.0)) : 0.0;
  out.delivery_interval_mean = int_mean;
  out.delivery_interval_stderr = n > 1 ? std::sqrt(out.interval_m2 / (n - 1.0)) / std::sqrt(n) : 0.0;
  return out;
}

}  // namespace qrep::engine
