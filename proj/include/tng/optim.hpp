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

#ifndef TNG_OPTIM_HPP
#define TNG_OPTIM_HPP

#include <cstdint>
#include <deque>
#include <vector>

#include "tng/problems.hpp"
#include "tng/vec.hpp"

namespace tng {

enum class StepType { kConstant, kInverseT };

// Constant eta, or eta_t = alpha / (lambda * (t + alpha * kappa)) with
// kappa = 2 * smoothness * c_qnz / lambda. The inverse-t form keeps
// eta_0 <= 1 / (2 * smoothness) whenever c_qnz >= 1.
struct StepSchedule {
  StepType type = StepType::kConstant;
  double eta = 0.01;
  double alpha = 1.0;
  double lambda = 1.0;
  double smoothness = 1.0;
  double c_qnz = 1.0;
};

double step_size(const StepSchedule& schedule, std::int64_t t);

struct SgdState {
  Vec w;
  std::int64_t t = 0;
  StepSchedule schedule;
};

// w <- w - eta_t * v. Throws on a non-finite descent vector.
void sgd_step(SgdState& state, const Vec& v);

// --- SVRG --------------------------------------------------------------------

struct SvrgState {
  Vec anchor;               // snapshot parameter
  Vec anchor_full_grad;     // exact full gradient at the anchor
  int epoch_len = 1;
  int steps_in_epoch = 0;
  std::uint64_t anchor_token = 0;  // detects anchor/gradient drift
};

SvrgState svrg_init(const LogRegProblem& problem, const Vec& w0, int epoch_len);

// Composite estimate over the batch:
// mean_n [grad_n(w) - grad_n(anchor)] + full_grad(anchor).
Vec svrg_gradient(const LogRegProblem& problem,
                  const std::vector<std::int32_t>& batch, const Vec& w,
                  const SvrgState& state);
Vec svrg_gradient(const LogRegProblem& problem, std::int32_t index,
                  const Vec& w, const SvrgState& state);

// Re-anchors at w and recomputes the exact full gradient. The caller
// charges one full-precision broadcast for the refresh.
void snapshot_refresh(const LogRegProblem& problem, SvrgState& state,
                      const Vec& w);

// --- L-BFGS ------------------------------------------------------------------

struct LbfgsPair {
  Vec s;
  Vec y;
  double rho = 0.0;  // 1 / (s . y)
};

struct LbfgsMemory {
  std::deque<LbfgsPair> pairs;  // oldest first
  int capacity = 8;
  double curvature_eps = 1e-10;
};

// Stores (s, y, 1/(s.y)) when s.y exceeds the relative curvature guard,
// evicting the oldest pair beyond capacity. Returns false when skipped.
bool lbfgs_push(LbfgsMemory& mem, const Vec& s, const Vec& y);

// Two-loop recursion. Empty memory applies the identity; otherwise the
// initial scaling is (s.y / ||y||^2) from the newest stored pair.
Vec lbfgs_apply(const LbfgsMemory& mem, const Vec& g);

}  // namespace tng

#endif  // TNG_OPTIM_HPP
