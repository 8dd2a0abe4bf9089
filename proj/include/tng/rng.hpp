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

#ifndef TNG_RNG_HPP
#define TNG_RNG_HPP

#include <cstdint>

namespace tng {

// Purpose tags keep the sample streams of unrelated subsystems disjoint.
// Each (seed, worker, round, purpose) tuple owns an independent stream.
namespace purpose {
inline constexpr int kBatchSampling = 0;
inline constexpr int kCodec = 1;
inline constexpr int kGradNoise = 2;
inline constexpr int kCodecStage2 = 3;
inline constexpr int kDataNormal = 10;
inline constexpr int kDataMagnitude = 11;
inline constexpr int kDataPlanted = 12;
inline constexpr int kTest = 99;
}  // namespace purpose

// Counter-based stream: every draw is a pure function of the derived key
// and the position, so streams can be created and consumed concurrently
// without any shared state.
class RngStream {
 public:
  RngStream() : state_(0) {}
  explicit RngStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via Box-Muller; consumes two uniforms per draw so the
  // sequence layout is independent of call history.
  double gaussian();

 private:
  std::uint64_t state_;
};

// Derives the stream for (master_seed, worker, round, purpose). Identical
// inputs give identical sample sequences on every platform; any change to
// one lineage field yields a statistically independent stream.
RngStream derive_stream(std::uint64_t master_seed, std::int64_t worker,
                        std::int64_t round, std::int64_t purpose);

// Variant used for re-sampling diagnostics: folds one extra lineage field.
RngStream derive_stream(std::uint64_t master_seed, std::int64_t worker,
                        std::int64_t round, std::int64_t purpose,
                        std::int64_t resample);

}  // namespace tng

#endif  // TNG_RNG_HPP
