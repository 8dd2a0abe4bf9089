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

#include "tng/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace tng {

bool OptimizerSpec::operator==(const OptimizerSpec& other) const {
  return type == other.type && step.type == other.step.type &&
         step.eta == other.step.eta && step.alpha == other.step.alpha &&
         step.lambda == other.step.lambda &&
         step.smoothness == other.step.smoothness &&
         step.c_qnz == other.step.c_qnz && epoch_len == other.epoch_len &&
         memory == other.memory;
}

std::uint64_t CommLedger::total() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.bits;
  return s;
}

std::uint64_t CommLedger::total(Direction dir) const {
  std::uint64_t s = 0;
  for (const auto& e : entries) {
    if (e.dir == dir) s += e.bits;
  }
  return s;
}

std::uint64_t CommLedger::total_for_worker(int worker) const {
  std::uint64_t s = 0;
  for (const auto& e : entries) {
    if (e.worker == worker) s += e.bits;
  }
  return s;
}

void validate_config(const ExperimentConfig& cfg) {
  const bool is_logreg = cfg.problem.type == ProblemType::kLogReg;
  const std::int32_t dim = is_logreg ? cfg.problem.d : 2;

  if (cfg.workers < 1) throw ConfigError("cluster.workers must be >= 1");
  if (cfg.batch_size < 1) throw ConfigError("cluster.batch_size must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  if (cfg.diag_resamples < 0) throw ConfigError("diag_resamples must be >= 0");

  if (is_logreg) {
    if (cfg.problem.n < 1) throw ConfigError("problem.n must be >= 1");
    if (cfg.problem.d < 1) throw ConfigError("problem.d must be >= 1");
    if (!(cfg.problem.c_sk > 0.0) || cfg.problem.c_sk > 1.0) {
      throw ConfigError("problem.c_sk must lie in (0, 1]");
    }
    if (cfg.problem.c_th < 0.0 || cfg.problem.c_th > 1.0) {
      throw ConfigError("problem.c_th must lie in [0, 1]");
    }
    if (!(cfg.problem.lambda2 > 0.0)) {
      throw ConfigError("problem.lambda2 must be > 0");
    }
    if (cfg.workers > cfg.problem.n) {
      throw ConfigError("cluster.workers must not exceed problem.n");
    }
    if (cfg.batch_size > cfg.problem.n / cfg.workers) {
      throw ConfigError(
          "cluster.batch_size must not exceed the smallest shard");
    }
  } else if (cfg.problem.init.has_value()) {
    if (cfg.problem.init->size() != 2 || !all_finite(*cfg.problem.init)) {
      throw ConfigError("problem.init must be two finite numbers");
    }
  }

  switch (cfg.optimizer.type) {
    case OptType::kSvrg:
      if (!is_logreg) {
        throw ConfigError("optimizer.type svrg requires the logreg problem");
      }
      if (cfg.optimizer.epoch_len < 1) {
        throw ConfigError("optimizer.epoch_len must be >= 1");
      }
      break;
    case OptType::kLbfgs:
      if (cfg.optimizer.memory < 1) {
        throw ConfigError("optimizer.memory must be >= 1");
      }
      break;
    default:
      break;
  }

  if (cfg.optimizer.step.type == StepType::kConstant) {
    if (!(cfg.optimizer.step.eta > 0.0)) {
      throw ConfigError("optimizer.step.eta must be > 0");
    }
  } else {
    if (!(cfg.optimizer.step.alpha > 0.0)) {
      throw ConfigError("optimizer.step.alpha must be > 0");
    }
    if (!(cfg.optimizer.step.lambda > 0.0)) {
      throw ConfigError("optimizer.step.lambda must be > 0");
    }
    if (!(cfg.optimizer.step.smoothness > 0.0)) {
      throw ConfigError("optimizer.step.smoothness must be > 0");
    }
    if (!(cfg.optimizer.step.c_qnz >= 1.0)) {
      throw ConfigError("optimizer.step.c_qnz must be >= 1");
    }
  }

  switch (cfg.codec.type) {
    case CodecType::kQuant:
      if (cfg.codec.levels < 1 || cfg.codec.levels > 65535) {
        throw ConfigError("codec.levels must lie in [1, 65535]");
      }
      break;
    case CodecType::kSparse:
      if (!(cfg.codec.keep > 0.0) ||
          cfg.codec.keep > static_cast<double>(dim)) {
        throw ConfigError("codec.keep must satisfy 0 < keep <= problem dim");
      }
      break;
    default:
      break;
  }

  if (!(cfg.mode.eps > 0.0)) throw ConfigError("normalization.eps must be > 0");
  if (cfg.reference.tau_max < 1) {
    throw ConfigError("normalization.tau_max must be >= 1");
  }
  if (cfg.reference.update_period < 1) {
    throw ConfigError("normalization.update_period must be >= 1");
  }
  if (cfg.reference.tag == RefStrategyTag::kDelayed &&
      cfg.reference.update_period > cfg.reference.tau_max) {
    throw ConfigError(
        "normalization.update_period must not exceed tau_max for the "
        "delayed strategy");
  }
  if (cfg.reference.tag == RefStrategyTag::kSvrgComposite &&
      cfg.optimizer.type != OptType::kSvrg) {
    throw ConfigError(
        "normalization.strategy svrg_composite requires optimizer.type svrg");
  }
  if (cfg.reference.tag == RefStrategyTag::kTwoStage &&
      cfg.mode.tag != NormModeTag::kSubtract) {
    throw ConfigError(
        "normalization.strategy two_stage requires the subtract mode");
  }

  if (!cfg.budget.max_rounds.has_value() && !cfg.budget.max_bits.has_value()) {
    throw ConfigError("budget needs max_rounds and/or max_bits");
  }
  if (cfg.budget.max_rounds.has_value() && *cfg.budget.max_rounds < 0) {
    throw ConfigError("budget.max_rounds must be >= 0");
  }
}

double World::objective(const Vec& at) const {
  if (is_logreg()) return logreg->full_loss(at);
  return surface_eval(surface, at[0], at[1]);
}

Vec World::full_gradient(const Vec& at) const {
  if (is_logreg()) return logreg->full_grad(at);
  auto [gx, gy] = surface_grad(surface, at[0], at[1]);
  return {gx, gy};
}

namespace {

Vec default_surface_init(SurfaceTag tag) {
  switch (tag) {
    case SurfaceTag::kAckley:
      return {2.5, 1.5};
    case SurfaceTag::kBooth:
      return {0.0, 0.0};
    case SurfaceTag::kRosenbrock:
      return {-1.2, 1.0};
  }
  throw std::logic_error("unreachable surface tag");
}

SurfaceTag surface_of(ProblemType type) {
  switch (type) {
    case ProblemType::kAckley:
      return SurfaceTag::kAckley;
    case ProblemType::kBooth:
      return SurfaceTag::kBooth;
    case ProblemType::kRosenbrock:
      return SurfaceTag::kRosenbrock;
    default:
      throw std::logic_error("not a surface problem");
  }
}

}  // namespace

World make_world(const ExperimentConfig& cfg) {
  validate_config(cfg);
  World world;
  world.cfg = cfg;
  if (cfg.problem.type == ProblemType::kLogReg) {
    auto data = gen_synthetic(cfg.problem.n, cfg.problem.d, cfg.problem.c_sk,
                              cfg.problem.c_th, cfg.problem.data_seed);
    world.logreg = std::make_shared<LogRegProblem>(std::move(data),
                                                   cfg.problem.lambda2);
    world.shards = partition(cfg.problem.n, cfg.workers);
    world.f_star = world.logreg->solve_reference_optimum().second;
    world.w = zeros(cfg.problem.d);
  } else {
    world.surface = surface_of(cfg.problem.type);
    world.f_star = 0.0;
    world.w = cfg.problem.init.value_or(default_surface_init(world.surface));
  }
  world.w_prev = world.w;
  world.ref = ReferenceState::initial(world.w.size());
  if (cfg.mode.tag == NormModeTag::kCombined) {
    world.ref.secondary = clip_away_from_zero(world.ref.current, cfg.mode.eps);
  }
  if (cfg.optimizer.type == OptType::kSvrg) {
    world.svrg = svrg_init(*world.logreg, world.w, cfg.optimizer.epoch_len);
    world.pending_broadcast_bits += full_precision_bits(world.w.size());
    if (cfg.reference.tag == RefStrategyTag::kSvrgComposite) {
      world.ref.snapshot =
          std::make_pair(world.svrg.anchor, world.svrg.anchor_full_grad);
      world.ref.current = world.svrg.anchor_full_grad;
      if (cfg.mode.tag == NormModeTag::kCombined) {
        world.ref.secondary =
            clip_away_from_zero(world.ref.current, cfg.mode.eps);
      }
    }
  }
  if (cfg.optimizer.type == OptType::kLbfgs) {
    world.lbfgs.capacity = cfg.optimizer.memory;
  }
  return world;
}

WorkerPayload encode_worker_payload(const Vec& g, const Vec& ref,
                                    const NormalizationMode& mode,
                                    const CodecConfig& codec,
                                    RngStream& stream) {
  WorkerPayload p;
  std::optional<Vec> ref2;
  const Vec* ref2p = nullptr;
  if (mode.tag == NormModeTag::kCombined) {
    ref2 = clip_away_from_zero(ref, mode.eps);
    ref2p = &ref2.value();
  }
  p.normalized = normalize(g, ref, ref2p, mode);
  p.message = encode(codec, p.normalized, stream);
  p.bits = bit_cost(p.message);
  p.decoded = decode(p.message);
  p.restored = restore(p.decoded, ref, ref2p, mode);
  return p;
}

namespace {

struct SharedRef {
  Vec value;
  bool fell_back = false;
  bool per_worker = false;  // mean-scalar / pool-search pick per worker
};

SharedRef compute_shared_reference(const World& world) {
  const auto& cfg = world.cfg;
  SharedRef out;
  switch (cfg.reference.tag) {
    case RefStrategyTag::kMeanScalar:
    case RefStrategyTag::kPoolSearch:
      out.per_worker = true;
      out.value = world.ref.current;
      return out;
    default:
      break;
  }
  RefContext ctx;
  ctx.dim = world.w.size();
  ctx.w = &world.w;
  if (world.round > 0) {
    ctx.w_prev = &world.w_prev;
    ctx.eta_prev = world.eta_prev;
  }
  MaterializedRef ref = materialize_reference(cfg.reference, world.ref, ctx);
  out.value = std::move(ref.value);
  out.fell_back = ref.fell_back;
  return out;
}

struct WorkerOutcome {
  Vec grad;
  Vec ref;
  Vec restored;
  BitCost bits = 0;
  bool fallback = false;
  double normalized_sq = 0.0;  // ||normalized||^2 of the coded payload
  double coding_err_sq = 0.0;  // ||decoded - normalized||^2
};

WorkerOutcome run_worker(const World& world, int m, std::int64_t resample,
                         const SharedRef& shared) {
  const auto& cfg = world.cfg;
  const std::size_t dim = world.w.size();
  WorkerOutcome out;

  if (world.is_logreg()) {
    RngStream sampler = derive_stream(cfg.master_seed, m, world.round,
                                      purpose::kBatchSampling, resample);
    const auto& shard = world.shards[m];
    std::vector<std::int32_t> batch(cfg.batch_size);
    for (int b = 0; b < cfg.batch_size; ++b) {
      batch[b] = shard[sampler.next_u64() % shard.size()];
    }
    if (cfg.optimizer.type == OptType::kSvrg) {
      out.grad = svrg_gradient(*world.logreg, batch, world.w, world.svrg);
    } else {
      out.grad = world.logreg->grad(world.w, batch);
    }
  } else {
    RngStream noise = derive_stream(cfg.master_seed, m, world.round,
                                    purpose::kGradNoise, resample);
    out.grad = noisy_grad(world.surface, world.w, noise);
  }

  BitCost extra = 0;
  switch (cfg.reference.tag) {
    case RefStrategyTag::kMeanScalar:
      out.ref = Vec(dim, mean_scalar(out.grad));
      extra += 16;  // the transmitted scalar
      break;
    case RefStrategyTag::kPoolSearch: {
      const auto pool = reference_pool(world.ref, out.grad);
      auto [idx, selected] = select_reference(out.grad, pool);
      out.ref = std::move(selected);
      extra += selection_bits(pool.size());
      if (idx == 2) extra += 16;  // scalar-mean entry must be shipped
      break;
    }
    default:
      out.ref = shared.value;
      out.fallback = shared.fell_back;
      break;
  }

  RngStream coder = derive_stream(cfg.master_seed, m, world.round,
                                  purpose::kCodec, resample);
  if (cfg.reference.tag == RefStrategyTag::kTwoStage) {
    const Vec stage1 = sub(out.grad, out.ref);
    const CompressedMessage msg1 = encode(cfg.codec, stage1, coder);
    const Vec dec1 = decode(msg1);
    const Vec residual = sub(stage1, dec1);
    const double residual_mean = mean_scalar(residual);
    RngStream coder2 = derive_stream(cfg.master_seed, m, world.round,
                                     purpose::kCodecStage2, resample);
    const CompressedMessage msg2 =
        encode(cfg.codec, sub(residual, Vec(dim, residual_mean)), coder2);
    const Vec dec2 = decode(msg2);
    Vec total = add(add(dec1, Vec(dim, residual_mean)), dec2);
    out.restored = add(out.ref, total);
    out.bits = bit_cost(msg1) + bit_cost(msg2) + 16 + extra;
    out.normalized_sq = l2_norm_sq(stage1);
    out.coding_err_sq = l2_norm_sq(sub(total, stage1));
  } else {
    WorkerPayload payload =
        encode_worker_payload(out.grad, out.ref, cfg.mode, cfg.codec, coder);
    out.restored = std::move(payload.restored);
    out.bits = payload.bits + extra;
    out.normalized_sq = l2_norm_sq(payload.normalized);
    out.coding_err_sq = l2_norm_sq(sub(payload.decoded, payload.normalized));
  }
  return out;
}

std::vector<WorkerOutcome> run_all_workers(const World& world,
                                           const SharedRef& shared,
                                           std::int64_t resample) {
  const int m_total = world.cfg.workers;
  std::vector<WorkerOutcome> outs(m_total);
  const int n_threads = std::min(world.cfg.threads, m_total);
  if (n_threads <= 1) {
    for (int m = 0; m < m_total; ++m) {
      outs[m] = run_worker(world, m, resample, shared);
    }
    return outs;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (int m = next.fetch_add(1); m < m_total; m = next.fetch_add(1)) {
        outs[m] = run_worker(world, m, resample, shared);
      }
    });
  }
  for (auto& th : pool) th.join();
  return outs;
}

double cnz_of(const std::vector<WorkerOutcome>& outs) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& o : outs) {
    num += l2_norm_sq(sub(o.grad, o.ref));
    den += l2_norm_sq(o.grad);
  }
  // All-zero gradients give the trivial normalization constant.
  return den == 0.0 ? 1.0 : num / den;
}

Vec average_restored(const std::vector<WorkerOutcome>& outs) {
  Vec v = zeros(outs.front().restored.size());
  for (const auto& o : outs) v = add(v, o.restored);
  return scale(v, 1.0 / static_cast<double>(outs.size()));
}

}  // namespace

Vec sample_round_average(const World& world, std::int64_t resample) {
  const SharedRef shared = compute_shared_reference(world);
  return average_restored(run_all_workers(world, shared, resample));
}

RoundLog run_round(World& world, DiagRound* diag) {
  const auto& cfg = world.cfg;
  const std::size_t dim = world.w.size();

  const SharedRef shared = compute_shared_reference(world);
  const std::vector<WorkerOutcome> outs = run_all_workers(world, shared, 0);

  const Vec v = average_restored(outs);
  const double cnz = cnz_of(outs);

  BitCost uplink_total = 0;
  bool fell_back = false;
  for (int m = 0; m < cfg.workers; ++m) {
    world.ledger.entries.push_back(
        {world.round, Direction::kUplink, m, outs[m].bits});
    uplink_total += outs[m].bits;
    fell_back = fell_back || outs[m].fallback;
  }

  if (diag != nullptr && cfg.diag_resamples > 0) {
    const double subopt_pre = world.objective(world.w) - world.f_star;
    double vsq = 0.0;
    double cnz_acc = 0.0;
    double cq_acc = 0.0;
    long cq_count = 0;
    for (int k = 1; k <= cfg.diag_resamples; ++k) {
      const auto redraw = run_all_workers(world, shared, k);
      vsq += l2_norm_sq(average_restored(redraw));
      cnz_acc += cnz_of(redraw);
      for (const auto& o : redraw) {
        if (o.normalized_sq > 0.0) {
          cq_acc += o.coding_err_sq / o.normalized_sq;
          ++cq_count;
        }
      }
    }
    diag->vsq_mean = vsq / cfg.diag_resamples;
    diag->cnz_hat = cnz_acc / cfg.diag_resamples;
    diag->cq_hat = cq_count > 0 ? cq_acc / static_cast<double>(cq_count) : 0.0;
    diag->subopt = subopt_pre;
  }

  // Optimizer step on the restored average.
  const double eta = step_size(cfg.optimizer.step, world.round);
  Vec direction = v;
  if (cfg.optimizer.type == OptType::kLbfgs) {
    if (world.round >= 1 && world.v_prev.has_value()) {
      lbfgs_push(world.lbfgs, sub(world.w, world.w_prev),
                 sub(v, *world.v_prev));
    }
    direction = lbfgs_apply(world.lbfgs, v);
  }
  if (!all_finite(direction)) {
    throw NumericError("non-finite descent direction in round " +
                       std::to_string(world.round));
  }
  Vec w_next(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    w_next[i] = world.w[i] - eta * direction[i];
  }
  if (!all_finite(w_next)) {
    throw NumericError("non-finite parameter after round " +
                       std::to_string(world.round));
  }

  BitCost broadcast = world.pending_broadcast_bits;
  world.pending_broadcast_bits = 0;

  if (cfg.optimizer.type == OptType::kSvrg) {
    world.svrg.steps_in_epoch += 1;
    if (world.svrg.steps_in_epoch >= world.svrg.epoch_len) {
      snapshot_refresh(*world.logreg, world.svrg, w_next);
      broadcast += full_precision_bits(dim);
      if (cfg.reference.tag == RefStrategyTag::kSvrgComposite) {
        world.ref.snapshot =
            std::make_pair(world.svrg.anchor, world.svrg.anchor_full_grad);
        world.ref.current = world.svrg.anchor_full_grad;
      }
    }
  }

  RoundOutputs round_out;
  round_out.round_average = v;
  round_out.w = &world.w;
  round_out.w_next = &w_next;
  round_out.eta = eta;
  broadcast += update_state(world.ref, cfg.reference, cfg.mode, round_out);

  if (cfg.broadcast_params) broadcast += full_precision_bits(dim);
  if (broadcast > 0) {
    world.ledger.entries.push_back(
        {world.round, Direction::kBroadcast, -1, broadcast});
  }
  world.cumulative_bits += uplink_total + broadcast;

  RoundLog log;
  log.round = world.round;
  log.objective = world.objective(w_next);
  log.suboptimality = log.objective - world.f_star;
  log.grad_norm = l2_norm(v);
  log.cnz_hat = cnz;
  log.uplink_bits = uplink_total;
  log.broadcast_bits = broadcast;
  log.cumulative_bits = world.cumulative_bits;
  log.ref_fallback = shared.fell_back || fell_back;

  world.w_prev = world.w;
  world.w = std::move(w_next);
  world.eta_prev = eta;
  world.v_prev = v;
  world.round += 1;
  return log;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  World world = make_world(cfg);
  RunResult result;
  result.f_star = world.f_star;
  while (true) {
    if (cfg.budget.max_rounds.has_value() &&
        world.round >= *cfg.budget.max_rounds) {
      break;
    }
    if (cfg.budget.max_bits.has_value() &&
        world.cumulative_bits >= *cfg.budget.max_bits) {
      break;
    }
    DiagRound diag;
    RoundLog log =
        run_round(world, cfg.diag_resamples > 0 ? &diag : nullptr);
    result.logs.push_back(log);
    if (cfg.diag_resamples > 0) result.diag.push_back(diag);
  }
  result.final_w = world.w;
  result.ledger = world.ledger;
  return result;
}

namespace {

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double subopt_at_budget(const RunResult& run, std::uint64_t budget_bits) {
  const RoundLog* last = nullptr;
  for (const auto& log : run.logs) {
    if (log.cumulative_bits <= budget_bits) last = &log;
  }
  if (last == nullptr) {
    throw ConfigError("budget below the first round's communication cost");
  }
  return last->suboptimality;
}

}  // namespace

BudgetComparison matched_budget_compare(
    const ExperimentConfig& cfg_a, const ExperimentConfig& cfg_b,
    std::uint64_t budget_bits, const std::vector<std::uint64_t>& seeds) {
  if (!(cfg_a.problem == cfg_b.problem) ||
      !(cfg_a.optimizer == cfg_b.optimizer)) {
    throw ConfigError(
        "matched comparison requires identical problem and optimizer blocks");
  }
  if (seeds.empty()) throw ConfigError("matched comparison needs seeds");

  BudgetComparison report;
  std::vector<double> all_a;
  std::vector<double> all_b;
  for (std::uint64_t seed : seeds) {
    ExperimentConfig a = cfg_a;
    ExperimentConfig b = cfg_b;
    a.master_seed = seed;
    b.master_seed = seed;
    a.budget.max_bits = budget_bits;
    b.budget.max_bits = budget_bits;
    const double sa = subopt_at_budget(run_experiment(a), budget_bits);
    const double sb = subopt_at_budget(run_experiment(b), budget_bits);
    int winner = 0;
    if (sa < sb) {
      winner = -1;
      report.wins_a += 1;
    } else if (sb < sa) {
      winner = 1;
      report.wins_b += 1;
    } else {
      report.ties += 1;
    }
    report.rows.push_back({seed, sa, sb, winner});
    all_a.push_back(sa);
    all_b.push_back(sb);
  }
  report.median_a = median_of(std::move(all_a));
  report.median_b = median_of(std::move(all_b));
  return report;
}

DiagReport variance_diagnostic(const std::vector<DiagRound>& trace,
                               double smoothness, double sigma_hat) {
  if (!std::isfinite(smoothness) || !std::isfinite(sigma_hat)) {
    throw ConfigError("variance diagnostic needs finite constants");
  }
  DiagReport report;
  report.satisfied.reserve(trace.size());
  std::size_t ok = 0;
  for (const auto& row : trace) {
    const double c_qnz = row.cq_hat * row.cnz_hat + 1.0;
    const double bound =
        c_qnz * (2.0 * smoothness * row.subopt + sigma_hat * sigma_hat);
    const bool sat = row.vsq_mean <= bound;
    report.satisfied.push_back(sat);
    if (sat) ++ok;
  }
  report.fraction = trace.empty()
                        ? 0.0
                        : static_cast<double>(ok) /
                              static_cast<double>(trace.size());
  return report;
}

const char* const kTraceCsvHeader =
    "run_id,round,objective,suboptimality,grad_norm,cnz_hat,"
    "uplink_bits_round,broadcast_bits_round,cumulative_bits";

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string trace_csv(const std::string& run_id,
                      const std::vector<RoundLog>& logs) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const auto& log : logs) {
    out += run_id;
    out += ',';
    out += std::to_string(log.round);
    out += ',';
    out += fmt17(log.objective);
    out += ',';
    out += fmt17(log.suboptimality);
    out += ',';
    out += fmt17(log.grad_norm);
    out += ',';
    out += fmt17(log.cnz_hat);
    out += ',';
    out += std::to_string(log.uplink_bits);
    out += ',';
    out += std::to_string(log.broadcast_bits);
    out += ',';
    out += std::to_string(log.cumulative_bits);
    out += '\n';
  }
  return out;
}

}  // namespace tng
