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

#include "tng/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace tng {

ReferenceState ReferenceState::initial(std::size_t dim) {
  ReferenceState st;
  st.current = zeros(dim);
  st.rounds_since_update = 0;
  return st;
}

Vec clip_away_from_zero(const Vec& v, double eps) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) >= eps) {
      r[i] = v[i];
    } else {
      r[i] = v[i] < 0.0 ? -eps : eps;
    }
  }
  return r;
}

std::vector<Vec> reference_pool(const ReferenceState& state, const Vec& g) {
  std::vector<Vec> pool;
  pool.push_back(zeros(g.size()));
  pool.push_back(state.current);
  pool.push_back(Vec(g.size(), mean_scalar(g)));
  return pool;
}

MaterializedRef materialize_reference(const ReferenceStrategy& strategy,
                                      const ReferenceState& state,
                                      const RefContext& ctx) {
  MaterializedRef out;
  const std::size_t dim = ctx.dim != 0 ? ctx.dim : state.current.size();
  switch (strategy.tag) {
    case RefStrategyTag::kZero:
      out.value = zeros(dim);
      return out;

    case RefStrategyTag::kMeanScalar:
      if (ctx.grad == nullptr) break;
      out.value = Vec(dim, mean_scalar(*ctx.grad));
      return out;

    case RefStrategyTag::kDelayed:
    case RefStrategyTag::kLastRoundAverage:
    case RefStrategyTag::kAveragedPastCompressed:
      out.value = state.current;
      out.fell_back = state.history.empty();
      return out;

    case RefStrategyTag::kSvrgComposite: {
      if (!state.snapshot.has_value()) break;
      if (ctx.batch_grad_at_w != nullptr && ctx.batch_grad_at_anchor != nullptr) {
        out.value = add(sub(*ctx.batch_grad_at_w, *ctx.batch_grad_at_anchor),
                        state.snapshot->second);
      } else {
        // Receiver-side form: only the anchor full gradient is shared.
        out.value = state.snapshot->second;
      }
      return out;
    }

    case RefStrategyTag::kTwoStage: {
      if (ctx.grad == nullptr || ctx.codec == nullptr || ctx.stream == nullptr) {
        break;
      }
      const Vec first_stage = sub(*ctx.grad, state.current);
      const Vec decoded = decode(encode(*ctx.codec, first_stage, *ctx.stream));
      const Vec residual = sub(sub(*ctx.grad, decoded), state.current);
      out.value = Vec(dim, mean_scalar(residual));
      return out;
    }

    case RefStrategyTag::kParamDiff:
      if (ctx.w == nullptr || ctx.w_prev == nullptr || !(ctx.eta_prev > 0.0)) {
        break;
      }
      out.value = scale(sub(*ctx.w_prev, *ctx.w), 1.0 / ctx.eta_prev);
      return out;

    case RefStrategyTag::kPoolSearch: {
      if (ctx.grad == nullptr) break;
      auto pool = reference_pool(state, *ctx.grad);
      auto [idx, ref] = select_reference(*ctx.grad, pool);
      out.value = std::move(ref);
      out.pool_index = idx;
      return out;
    }
  }
  out.value = zeros(dim);
  out.fell_back = true;
  return out;
}

Vec normalize(const Vec& g, const Vec& gtilde, const Vec* gtilde2,
              const NormalizationMode& mode) {
  switch (mode.tag) {
    case NormModeTag::kSubtract:
      return sub(g, gtilde);
    case NormModeTag::kQuotient:
      return safe_quotient(g, gtilde, mode.eps);
    case NormModeTag::kCombined:
      if (gtilde2 == nullptr) {
        throw std::invalid_argument(
            "combined normalization needs a secondary reference");
      }
      return safe_quotient(sub(g, gtilde), *gtilde2, mode.eps);
  }
  throw std::logic_error("unreachable normalization mode");
}

Vec normalize(const Vec& g, const ReferenceState& state,
              const NormalizationMode& mode) {
  const Vec* second =
      state.secondary.has_value() ? &state.secondary.value() : nullptr;
  return normalize(g, state.current, second, mode);
}

Vec restore(const Vec& decoded, const Vec& gtilde, const Vec* gtilde2,
            const NormalizationMode& mode) {
  switch (mode.tag) {
    case NormModeTag::kSubtract:
      return add(gtilde, decoded);
    case NormModeTag::kQuotient:
      // Multiply by the same guarded divisor normalize used, so the pair
      // stays an exact inverse even where the guard was active.
      return elementwise_mul(clip_away_from_zero(gtilde, mode.eps), decoded);
    case NormModeTag::kCombined:
      if (gtilde2 == nullptr) {
        throw std::invalid_argument(
            "combined restore needs a secondary reference");
      }
      return add(
          elementwise_mul(clip_away_from_zero(*gtilde2, mode.eps), decoded),
          gtilde);
  }
  throw std::logic_error("unreachable normalization mode");
}

Vec restore(const Vec& decoded, const ReferenceState& state,
            const NormalizationMode& mode) {
  const Vec* second =
      state.secondary.has_value() ? &state.secondary.value() : nullptr;
  return restore(decoded, state.current, second, mode);
}

std::pair<std::size_t, Vec> select_reference(const Vec& g,
                                             const std::vector<Vec>& pool) {
  if (pool.empty()) throw std::invalid_argument("reference pool is empty");
  std::size_t best = 0;
  double best_dist = l2_norm_sq(sub(g, pool[0]));
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double d = l2_norm_sq(sub(g, pool[i]));
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return {best, pool[best]};
}

BitCost selection_bits(std::size_t pool_size) {
  return ceil_log2(static_cast<std::uint64_t>(pool_size));
}

double estimate_cnz(const std::vector<Vec>& gs, const std::vector<Vec>& refs) {
  if (gs.empty() || gs.size() != refs.size()) {
    throw std::invalid_argument("estimate_cnz needs equal nonempty lists");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    num += l2_norm_sq(sub(gs[i], refs[i]));
    den += l2_norm_sq(gs[i]);
  }
  if (den == 0.0) {
    throw std::invalid_argument("estimate_cnz undefined for all-zero gradients");
  }
  return num / den;
}

BitCost refresh_broadcast_bits(const ReferenceStrategy& strategy,
                               std::size_t dim) {
  switch (strategy.tag) {
    case RefStrategyTag::kZero:
    case RefStrategyTag::kMeanScalar:
    case RefStrategyTag::kParamDiff:
    case RefStrategyTag::kSvrgComposite:  // charged with the anchor refresh
      return 0;
    default:
      return full_precision_bits(dim);
  }
}

BitCost update_state(ReferenceState& state, const ReferenceStrategy& strategy,
                     const NormalizationMode& mode, const RoundOutputs& out) {
  state.history.push_front(out.round_average);
  while (state.history.size() > static_cast<std::size_t>(strategy.tau_max)) {
    state.history.pop_back();
  }

  BitCost bits = 0;
  state.rounds_since_update += 1;
  if (state.rounds_since_update >= strategy.update_period) {
    state.rounds_since_update = 0;
    switch (strategy.tag) {
      case RefStrategyTag::kDelayed:
      case RefStrategyTag::kLastRoundAverage:
      case RefStrategyTag::kTwoStage:
      case RefStrategyTag::kPoolSearch:
        state.current = state.history.front();
        bits = refresh_broadcast_bits(strategy, state.current.size());
        break;
      case RefStrategyTag::kAveragedPastCompressed: {
        Vec acc = zeros(state.current.size());
        for (const Vec& v : state.history) acc = add(acc, v);
        state.current = scale(acc, 1.0 / static_cast<double>(strategy.tau_max));
        bits = refresh_broadcast_bits(strategy, state.current.size());
        break;
      }
      case RefStrategyTag::kSvrgComposite:
        if (state.snapshot.has_value()) state.current = state.snapshot->second;
        break;
      default:
        // Zero, MeanScalar and ParamDiff materialize fresh each round and
        // keep nothing here.
        break;
    }
  }

  if (mode.tag == NormModeTag::kCombined) {
    state.secondary = clip_away_from_zero(state.current, mode.eps);
  }
  return bits;
}

}  // namespace tng
