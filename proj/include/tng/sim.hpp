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

#ifndef TNG_SIM_HPP
#define TNG_SIM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tng/codec.hpp"
#include "tng/optim.hpp"
#include "tng/problems.hpp"
#include "tng/reference.hpp"
#include "tng/vec.hpp"

namespace tng {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProblemType { kAckley, kBooth, kRosenbrock, kLogReg };
enum class OptType { kSgd, kSvrg, kLbfgs };

struct ProblemSpec {
  ProblemType type = ProblemType::kBooth;
  // surfaces
  std::optional<Vec> init;
  // logistic regression
  std::int32_t n = 512;
  std::int32_t d = 64;
  double c_sk = 1.0;
  double c_th = 0.6;
  double lambda2 = 0.1;
  std::uint64_t data_seed = 1;

  bool operator==(const ProblemSpec&) const = default;
};

struct OptimizerSpec {
  OptType type = OptType::kSgd;
  StepSchedule step;
  int epoch_len = 64;  // svrg snapshot period, in rounds
  int memory = 8;      // lbfgs capacity

  bool operator==(const OptimizerSpec&) const;
};

struct BudgetSpec {
  std::optional<std::int64_t> max_rounds;
  std::optional<std::uint64_t> max_bits;
};

// Everything that determines a run, together with the master seed.
struct ExperimentConfig {
  std::string label = "run";
  ProblemSpec problem;
  int workers = 1;
  int batch_size = 1;
  CodecConfig codec;
  NormalizationMode mode;
  ReferenceStrategy reference;
  OptimizerSpec optimizer;
  BudgetSpec budget;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;  // sweep seeds
  int threads = 1;
  bool broadcast_params = false;  // opt-in full parameter broadcast per round
  int diag_resamples = 0;         // per-round re-sampling for diagnostics
};

// Cross-module consistency checks; throws ConfigError naming the bad key.
void validate_config(const ExperimentConfig& cfg);

// --- ledger and logs ----------------------------------------------------------

enum class Direction { kUplink, kBroadcast };

struct LedgerEntry {
  std::int64_t round;
  Direction dir;
  int worker;  // -1 for broadcasts
  std::uint64_t bits;
};

struct CommLedger {
  std::vector<LedgerEntry> entries;

  std::uint64_t total() const;
  std::uint64_t total(Direction dir) const;
  std::uint64_t total_for_worker(int worker) const;
};

// One row per completed round; objective and gradient norm describe the
// state reached after the round's update, paired with the bits paid for it.
struct RoundLog {
  std::int64_t round = 0;
  double objective = 0.0;
  double suboptimality = 0.0;
  double grad_norm = 0.0;
  double cnz_hat = 0.0;
  std::uint64_t uplink_bits = 0;
  std::uint64_t broadcast_bits = 0;
  std::uint64_t cumulative_bits = 0;
  bool ref_fallback = false;
};

// Per-round diagnostic sample (collected when diag_resamples > 0); the
// suboptimality here is measured at the round's starting parameter.
struct DiagRound {
  double vsq_mean = 0.0;
  double cnz_hat = 0.0;
  double cq_hat = 0.0;
  double subopt = 0.0;
};

// --- world ---------------------------------------------------------------------

struct World {
  ExperimentConfig cfg;
  SurfaceTag surface = SurfaceTag::kBooth;
  std::shared_ptr<const LogRegProblem> logreg;
  std::vector<std::vector<std::int32_t>> shards;
  double f_star = 0.0;

  Vec w;
  Vec w_prev;
  double eta_prev = 0.0;
  std::int64_t round = 0;
  ReferenceState ref;
  SvrgState svrg;
  LbfgsMemory lbfgs;
  std::optional<Vec> v_prev;
  CommLedger ledger;
  std::uint64_t cumulative_bits = 0;
  std::uint64_t pending_broadcast_bits = 0;  // charged with the next round

  bool is_logreg() const { return cfg.problem.type == ProblemType::kLogReg; }
  double objective(const Vec& at) const;
  Vec full_gradient(const Vec& at) const;
};

World make_world(const ExperimentConfig& cfg);

// Normalize -> encode -> decode -> restore against an explicit reference.
struct WorkerPayload {
  CompressedMessage message;
  BitCost bits = 0;
  Vec normalized;
  Vec decoded;
  Vec restored;
};
WorkerPayload encode_worker_payload(const Vec& g, const Vec& ref,
                                    const NormalizationMode& mode,
                                    const CodecConfig& codec,
                                    RngStream& stream);

// One synchronous round: workers draw gradients, normalize against the
// shared reference, code and transmit; the coordinator restores, averages,
// steps the optimizer, and refreshes the reference. Appends ledger entries
// and returns the round log (plus a diagnostic sample when enabled).
RoundLog run_round(World& world, DiagRound* diag = nullptr);

// Replays the communication phase of the upcoming round without advancing
// the world; distinct resample values redraw all round randomness.
Vec sample_round_average(const World& world, std::int64_t resample);

struct RunResult {
  std::vector<RoundLog> logs;
  std::vector<DiagRound> diag;
  Vec final_w;
  CommLedger ledger;
  double f_star = 0.0;
};

RunResult run_experiment(const ExperimentConfig& cfg);

// --- matched-budget comparison ---------------------------------------------------

struct BudgetComparison {
  struct Row {
    std::uint64_t seed;
    double subopt_a;
    double subopt_b;
    int winner;  // -1 a, +1 b, 0 tie
  };
  std::vector<Row> rows;
  int wins_a = 0;
  int wins_b = 0;
  int ties = 0;
  double median_a = 0.0;
  double median_b = 0.0;
};

// Runs both configs on every seed and reads each run's suboptimality at the
// last completed round at or below budget_bits. Both configs must share the
// problem and optimizer blocks.
BudgetComparison matched_budget_compare(const ExperimentConfig& cfg_a,
                                        const ExperimentConfig& cfg_b,
                                        std::uint64_t budget_bits,
                                        const std::vector<std::uint64_t>& seeds);

// --- variance diagnostic ----------------------------------------------------------

struct DiagReport {
  std::vector<bool> satisfied;
  double fraction = 0.0;
};

// Per-round check of the restored-average second moment against
// (cq*cnz + 1) * (2L * subopt + sigma^2).
DiagReport variance_diagnostic(const std::vector<DiagRound>& trace,
                               double smoothness, double sigma_hat);

// --- trace export ------------------------------------------------------------------

// CSV with the fixed column set; floats carry 17 significant digits.
std::string trace_csv(const std::string& run_id,
                      const std::vector<RoundLog>& logs);

extern const char* const kTraceCsvHeader;

}  // namespace tng

#endif  // TNG_SIM_HPP
