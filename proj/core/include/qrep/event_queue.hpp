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
#include <queue>
#include <vector>

#include "qrep/error.hpp"

namespace qrep::engine {

enum class EventKind {
  kAttemptLaunch,
  kHeraldArrive,
  kSwapReady,
  kPurifyReady,
  kDelivery,
  kCutoffExpire,
};

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::kAttemptLaunch;
  std::uint32_t subject = 0;  // link, unit or node index depending on kind
  std::uint64_t payload = 0;  // boundary index, block id, ...
  std::uint64_t seq = 0;      // insertion order, breaks time ties
};

/// Min-heap on (time, insertion order). Events are never scheduled before the
/// current clock.
class EventQueue {
 public:
  void push(double time, EventKind kind, std::uint32_t subject, std::uint64_t payload = 0) {
    require(time >= now_, "event queue: cannot schedule into the past");
    heap_.push(Event{time, kind, subject, payload, next_seq_++});
  }

  bool empty() const { return heap_.empty(); }
  const Event& top() const { return heap_.top(); }
  double now() const { return now_; }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
};

}  // namespace qrep::engine
