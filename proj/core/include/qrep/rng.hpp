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

/// Counter-based random numbers. A draw is a pure function of
/// (seed, stream, counter, lane), hashed with the SplitMix64 finalizer, so
/// each link or node owns a stream and adding streams never shifts the draws
/// of existing ones.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                           std::uint64_t lane = 0);

/// Uniform in (0, 1], 53-bit resolution.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                       std::uint64_t lane = 0);

/// Decorrelated child seed, e.g. for independent trials of a sweep.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Stream identifiers: the kind in the top byte, the object index below.
enum class StreamKind : std::uint64_t { kAttempt = 1, kSwap = 2, kPurify = 3 };

constexpr std::uint64_t stream_id(StreamKind kind, std::uint64_t index) {
  return (static_cast<std::uint64_t>(kind) << 56) | (index & ((std::uint64_t{1} << 56) - 1));
}

}  // namespace qrep
