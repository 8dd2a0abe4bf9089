// Copyright 2026 The TNG Authors.
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

#include "tng/rng.hpp"

#include <cmath>

namespace tng {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
  h ^= v + kGamma + (h << 6) + (h >> 2);
  return mix(h);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  // u1 in (0, 1] so the log is finite.
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

RngStream derive_stream(std::uint64_t master_seed, std::int64_t worker,
                        std::int64_t round, std::int64_t purpose) {
  return derive_stream(master_seed, worker, round, purpose, 0);
}

RngStream derive_stream(std::uint64_t master_seed, std::int64_t worker,
                        std::int64_t round, std::int64_t purpose,
                        std::int64_t resample) {
  std::uint64_t h = mix(master_seed);
  h = absorb(h, static_cast<std::uint64_t>(worker));
  h = absorb(h, static_cast<std::uint64_t>(round));
  h = absorb(h, static_cast<std::uint64_t>(purpose));
  h = absorb(h, static_cast<std::uint64_t>(resample));
  return RngStream(h);
}

}  // namespace tng
