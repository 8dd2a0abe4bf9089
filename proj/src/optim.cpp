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

#include "tng/optim.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tng {
namespace {

std::uint64_t vec_token(const Vec& v) {
  // FNV-1a over the raw bytes; cheap consistency stamp.
  std::uint64_t h = 1469598103934665603ULL;
  for (double x : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace

double step_size(const StepSchedule& schedule, std::int64_t t) {
  switch (schedule.type) {
    case StepType::kConstant:
      return schedule.eta;
    case StepType::kInverseT: {
      const double kappa =
          2.0 * schedule.smoothness * schedule.c_qnz / schedule.lambda;
      return schedule.alpha /
             (schedule.lambda * (static_cast<double>(t) + schedule.alpha * kappa));
    }
  }
  throw std::logic_error("unreachable step type");
}

void sgd_step(SgdState& state, const Vec& v) {
  check_same_dim(state.w, v);
  if (!all_finite(v)) {
    throw std::runtime_error("sgd_step received a non-finite descent vector");
  }
  const double eta = step_size(state.schedule, state.t);
  for (std::size_t i = 0; i < state.w.size(); ++i) state.w[i] -= eta * v[i];
  state.t += 1;
}

SvrgState svrg_init(const LogRegProblem& problem, const Vec& w0,
                    int epoch_len) {
  if (epoch_len < 1) throw std::invalid_argument("epoch_len must be >= 1");
  SvrgState state;
  state.epoch_len = epoch_len;
  snapshot_refresh(problem, state, w0);
  return state;
}

Vec svrg_gradient(const LogRegProblem& problem,
                  const std::vector<std::int32_t>& batch, const Vec& w,
                  const SvrgState& state) {
  if (state.anchor.empty()) {
    throw std::runtime_error("svrg snapshot not initialized");
  }
  if (vec_token(state.anchor) != state.anchor_token) {
    throw std::runtime_error("svrg anchor and stored full gradient disagree");
  }
  const Vec g_w = problem.grad(w, batch);
  const Vec g_anchor = problem.grad(state.anchor, batch);
  return add(sub(g_w, g_anchor), state.anchor_full_grad);
}

Vec svrg_gradient(const LogRegProblem& problem, std::int32_t index,
                  const Vec& w, const SvrgState& state) {
  return svrg_gradient(problem, std::vector<std::int32_t>{index}, w, state);
}

void snapshot_refresh(const LogRegProblem& problem, SvrgState& state,
                      const Vec& w) {
  state.anchor = w;
  state.anchor_full_grad = problem.full_grad(w);
  state.steps_in_epoch = 0;
  state.anchor_token = vec_token(state.anchor);
}

bool lbfgs_push(LbfgsMemory& mem, const Vec& s, const Vec& y) {
  check_same_dim(s, y);
  const double sy = dot(s, y);
  const double guard = mem.curvature_eps * l2_norm(s) * l2_norm(y);
  if (!(sy > guard)) return false;
  mem.pairs.push_back({s, y, 1.0 / sy});
  while (mem.pairs.size() > static_cast<std::size_t>(mem.capacity)) {
    mem.pairs.pop_front();
  }
  return true;
}

Vec lbfgs_apply(const LbfgsMemory& mem, const Vec& g) {
  if (mem.pairs.empty()) return g;
  const std::size_t k = mem.pairs.size();
  Vec q = g;
  std::vector<double> alpha(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    const LbfgsPair& p = mem.pairs[i];
    alpha[i] = p.rho * dot(p.s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * p.y[j];
  }
  const LbfgsPair& newest = mem.pairs.back();
  const double gamma = dot(newest.s, newest.y) / l2_norm_sq(newest.y);
  Vec r = scale(q, gamma);
  for (std::size_t i = 0; i < k; ++i) {
    const LbfgsPair& p = mem.pairs[i];
    const double beta = p.rho * dot(p.y, r);
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] += (alpha[i] - beta) * p.s[j];
    }
  }
  return r;
}

}  // namespace tng
