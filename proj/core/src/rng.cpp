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

#include "qrep/rng.hpp"

namespace qrep {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                           std::uint64_t lane) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ counter);
  return mix64(h ^ lane);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                       std::uint64_t lane) {
  const std::uint64_t bits = counter_hash(seed, stream, counter, lane) >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(mix64(root ^ 0x5851f42d4c957f2dULL) + index);
}

}  // namespace qrep
