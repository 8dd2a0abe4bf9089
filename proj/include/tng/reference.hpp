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

#ifndef TNG_REFERENCE_HPP
#define TNG_REFERENCE_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "tng/codec.hpp"
#include "tng/vec.hpp"

namespace tng {

enum class RefStrategyTag {
  kZero,
  kMeanScalar,
  kDelayed,
  kAveragedPastCompressed,
  kSvrgComposite,
  kTwoStage,
  kLastRoundAverage,
  kParamDiff,
  kPoolSearch,
};

struct ReferenceStrategy {
  RefStrategyTag tag = RefStrategyTag::kZero;
  int tau_max = 1;        // history window / staleness bound
  int update_period = 1;  // rounds between reference refreshes
};

// Everything needed to materialize the shared reference in a round. The
// history holds decoded round averages, newest first.
struct ReferenceState {
  Vec current;                                  // the active reference
  std::optional<Vec> secondary;                 // divisor for Combined mode
  std::deque<Vec> history;                      // v(w_{t-1}), v(w_{t-2}), ...
  std::optional<std::pair<Vec, Vec>> snapshot;  // (anchor w, full gradient)
  int rounds_since_update = 0;

  static ReferenceState initial(std::size_t dim);
};

enum class NormModeTag { kSubtract, kQuotient, kCombined };

struct NormalizationMode {
  NormModeTag tag = NormModeTag::kSubtract;
  double eps = 1e-12;  // quotient guard
};

// Inputs a strategy may need when materializing its reference. Pointers are
// optional; a strategy whose inputs are missing falls back to the zero
// reference and reports it.
struct RefContext {
  std::size_t dim = 0;
  const Vec* grad = nullptr;                // current local gradient
  const Vec* w = nullptr;                   // parameter this round
  const Vec* w_prev = nullptr;              // parameter last round
  double eta_prev = 0.0;                    // step applied between them
  const Vec* batch_grad_at_w = nullptr;     // same-sample gradient at w
  const Vec* batch_grad_at_anchor = nullptr;  // same-sample gradient at the anchor
  const CodecConfig* codec = nullptr;       // first-stage codec (two-stage)
  RngStream* stream = nullptr;              // first-stage coding draws (two-stage)
};

struct MaterializedRef {
  Vec value;
  bool fell_back = false;  // required inputs missing, used zero instead
  std::optional<std::size_t> pool_index;  // set by the pool-search strategy
};

// Candidate references a worker may pick from: the zero vector, the shared
// current reference, and the scalar-mean proxy of g.
std::vector<Vec> reference_pool(const ReferenceState& state, const Vec& g);

MaterializedRef materialize_reference(const ReferenceStrategy& strategy,
                                      const ReferenceState& state,
                                      const RefContext& ctx);

// Normalize against explicit reference vectors. gtilde2 may be null except
// in Combined mode.
Vec normalize(const Vec& g, const Vec& gtilde, const Vec* gtilde2,
              const NormalizationMode& mode);
Vec normalize(const Vec& g, const ReferenceState& state,
              const NormalizationMode& mode);

// Inverse of normalize for the decoded payload.
Vec restore(const Vec& decoded, const Vec& gtilde, const Vec* gtilde2,
            const NormalizationMode& mode);
Vec restore(const Vec& decoded, const ReferenceState& state,
            const NormalizationMode& mode);

// argmin over the pool of ||g - ref||^2, ties to the lowest index.
std::pair<std::size_t, Vec> select_reference(const Vec& g,
                                             const std::vector<Vec>& pool);

// Bits needed to indicate a pool selection.
BitCost selection_bits(std::size_t pool_size);

// Ratio sum ||g - ref||^2 / sum ||g||^2 over paired lists.
double estimate_cnz(const std::vector<Vec>& gs, const std::vector<Vec>& refs);

// Copy of v with every entry pushed at least eps away from zero (used to
// build a default Combined-mode divisor).
Vec clip_away_from_zero(const Vec& v, double eps);

struct RoundOutputs {
  Vec round_average;  // decoded + restored average v_t
  const Vec* w = nullptr;
  const Vec* w_next = nullptr;
  double eta = 0.0;
};

// End-of-round bookkeeping: push v_t into the bounded history and refresh
// the active reference every update_period rounds. Returns the broadcast
// bits charged for the refresh (zero on non-refresh rounds and for
// strategies that transmit nothing).
BitCost update_state(ReferenceState& state, const ReferenceStrategy& strategy,
                     const NormalizationMode& mode, const RoundOutputs& out);

// Broadcast cost of one reference refresh for the strategy.
BitCost refresh_broadcast_bits(const ReferenceStrategy& strategy,
                               std::size_t dim);

}  // namespace tng

#endif  // TNG_REFERENCE_HPP
