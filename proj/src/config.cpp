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

#include "tng/config.hpp"

#include <fstream>
#include <set>

namespace tng {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& block,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("config block '" + block + "' must be an object");
  }
  for (const auto& item : obj.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ConfigError("unknown config key '" +
                        (block.empty() ? item.key() : block + "." + item.key()) +
                        "'");
    }
  }
}

template <typename T>
T get_or(const json& obj, const std::string& block, const std::string& key,
         T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + block + "." + key +
                      "' has the wrong type");
  }
}

template <typename T>
T get_required(const json& obj, const std::string& block,
               const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("missing config key '" + block + "." + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + block + "." + key +
                      "' has the wrong type");
  }
}

ProblemType parse_problem_type(const std::string& s) {
  if (s == "ackley") return ProblemType::kAckley;
  if (s == "booth") return ProblemType::kBooth;
  if (s == "rosenbrock") return ProblemType::kRosenbrock;
  if (s == "logreg") return ProblemType::kLogReg;
  throw ConfigError("problem.type must be one of ackley, booth, rosenbrock, "
                    "logreg (got '" + s + "')");
}

const char* problem_type_name(ProblemType t) {
  switch (t) {
    case ProblemType::kAckley: return "ackley";
    case ProblemType::kBooth: return "booth";
    case ProblemType::kRosenbrock: return "rosenbrock";
    case ProblemType::kLogReg: return "logreg";
  }
  return "?";
}

OptType parse_opt_type(const std::string& s) {
  if (s == "sgd") return OptType::kSgd;
  if (s == "svrg") return OptType::kSvrg;
  if (s == "lbfgs") return OptType::kLbfgs;
  throw ConfigError("optimizer.type must be one of sgd, svrg, lbfgs (got '" +
                    s + "')");
}

const char* opt_type_name(OptType t) {
  switch (t) {
    case OptType::kSgd: return "sgd";
    case OptType::kSvrg: return "svrg";
    case OptType::kLbfgs: return "lbfgs";
  }
  return "?";
}

CodecType parse_codec_type(const std::string& s) {
  if (s == "none") return CodecType::kNone;
  if (s == "ternary") return CodecType::kTernary;
  if (s == "quant") return CodecType::kQuant;
  if (s == "sparse") return CodecType::kSparse;
  throw ConfigError("codec.type must be one of none, ternary, quant, sparse "
                    "(got '" + s + "')");
}

const char* codec_type_name(CodecType t) {
  switch (t) {
    case CodecType::kNone: return "none";
    case CodecType::kTernary: return "ternary";
    case CodecType::kQuant: return "quant";
    case CodecType::kSparse: return "sparse";
  }
  return "?";
}

NormModeTag parse_mode(const std::string& s) {
  if (s == "subtract") return NormModeTag::kSubtract;
  if (s == "quotient") return NormModeTag::kQuotient;
  if (s == "combined") return NormModeTag::kCombined;
  throw ConfigError("normalization.mode must be one of subtract, quotient, "
                    "combined (got '" + s + "')");
}

const char* mode_name(NormModeTag t) {
  switch (t) {
    case NormModeTag::kSubtract: return "subtract";
    case NormModeTag::kQuotient: return "quotient";
    case NormModeTag::kCombined: return "combined";
  }
  return "?";
}

RefStrategyTag parse_strategy(const std::string& s) {
  if (s == "zero") return RefStrategyTag::kZero;
  if (s == "mean_scalar") return RefStrategyTag::kMeanScalar;
  if (s == "delayed") return RefStrategyTag::kDelayed;
  if (s == "averaged_past") return RefStrategyTag::kAveragedPastCompressed;
  if (s == "svrg_composite") return RefStrategyTag::kSvrgComposite;
  if (s == "two_stage") return RefStrategyTag::kTwoStage;
  if (s == "last_round_average") return RefStrategyTag::kLastRoundAverage;
  if (s == "param_diff") return RefStrategyTag::kParamDiff;
  if (s == "pool_search") return RefStrategyTag::kPoolSearch;
  throw ConfigError(
      "normalization.strategy must be one of zero, mean_scalar, delayed, "
      "averaged_past, svrg_composite, two_stage, last_round_average, "
      "param_diff, pool_search (got '" + s + "')");
}

const char* strategy_name(RefStrategyTag t) {
  switch (t) {
    case RefStrategyTag::kZero: return "zero";
    case RefStrategyTag::kMeanScalar: return "mean_scalar";
    case RefStrategyTag::kDelayed: return "delayed";
    case RefStrategyTag::kAveragedPastCompressed: return "averaged_past";
    case RefStrategyTag::kSvrgComposite: return "svrg_composite";
    case RefStrategyTag::kTwoStage: return "two_stage";
    case RefStrategyTag::kLastRoundAverage: return "last_round_average";
    case RefStrategyTag::kParamDiff: return "param_diff";
    case RefStrategyTag::kPoolSearch: return "pool_search";
  }
  return "?";
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  require_keys(doc, "",
               {"label", "master_seed", "seeds", "threads", "problem",
                "cluster", "optimizer", "codec", "normalization", "budget",
                "broadcast_params", "diag_resamples", "grid"});

  ExperimentConfig cfg;
  cfg.label = get_or<std::string>(doc, "", "label", "run");
  cfg.master_seed = get_or<std::uint64_t>(doc, "", "master_seed", 0);
  cfg.threads = get_or<int>(doc, "", "threads", 1);
  cfg.broadcast_params = get_or<bool>(doc, "", "broadcast_params", false);
  cfg.diag_resamples = get_or<int>(doc, "", "diag_resamples", 0);
  if (doc.contains("seeds")) {
    cfg.seeds = get_required<std::vector<std::uint64_t>>(doc, "", "seeds");
  }

  const json problem = doc.value("problem", json::object());
  require_keys(problem, "problem",
               {"type", "init", "n", "d", "c_sk", "c_th", "lambda2",
                "data_seed"});
  cfg.problem.type =
      parse_problem_type(get_or<std::string>(problem, "problem", "type", "booth"));
  if (cfg.problem.type == ProblemType::kLogReg) {
    if (problem.contains("init")) {
      throw ConfigError("problem.init applies only to surface problems");
    }
    cfg.problem.n = get_or<std::int32_t>(problem, "problem", "n", 512);
    cfg.problem.d = get_or<std::int32_t>(problem, "problem", "d", 64);
    cfg.problem.c_sk = get_or<double>(problem, "problem", "c_sk", 1.0);
    cfg.problem.c_th = get_or<double>(problem, "problem", "c_th", 0.6);
    cfg.problem.lambda2 = get_or<double>(problem, "problem", "lambda2", 0.1);
    cfg.problem.data_seed =
        get_or<std::uint64_t>(problem, "problem", "data_seed", 1);
  } else {
    for (const char* key : {"n", "d", "c_sk", "c_th", "lambda2", "data_seed"}) {
      if (problem.contains(key)) {
        throw ConfigError(std::string("problem.") + key +
                          " applies only to the logreg problem");
      }
    }
    if (problem.contains("init")) {
      cfg.problem.init = get_required<Vec>(problem, "problem", "init");
    }
  }

  const json cluster = doc.value("cluster", json::object());
  require_keys(cluster, "cluster", {"workers", "batch_size"});
  cfg.workers = get_or<int>(cluster, "cluster", "workers", 1);
  cfg.batch_size = get_or<int>(cluster, "cluster", "batch_size", 1);

  const json optimizer = doc.value("optimizer", json::object());
  require_keys(optimizer, "optimizer", {"type", "step", "epoch_len", "memory"});
  cfg.optimizer.type =
      parse_opt_type(get_or<std::string>(optimizer, "optimizer", "type", "sgd"));
  cfg.optimizer.epoch_len =
      get_or<int>(optimizer, "optimizer", "epoch_len", 64);
  cfg.optimizer.memory = get_or<int>(optimizer, "optimizer", "memory", 8);
  const json step = optimizer.value("step", json::object());
  require_keys(step, "optimizer.step",
               {"type", "eta", "alpha", "lambda", "smoothness", "c_qnz"});
  const std::string step_type =
      get_or<std::string>(step, "optimizer.step", "type", "constant");
  if (step_type == "constant") {
    cfg.optimizer.step.type = StepType::kConstant;
    for (const char* key : {"alpha", "lambda", "smoothness", "c_qnz"}) {
      if (step.contains(key)) {
        throw ConfigError(std::string("optimizer.step.") + key +
                          " applies only to the inverse_t schedule");
      }
    }
    cfg.optimizer.step.eta = get_or<double>(step, "optimizer.step", "eta", 0.01);
  } else if (step_type == "inverse_t") {
    cfg.optimizer.step.type = StepType::kInverseT;
    if (step.contains("eta")) {
      throw ConfigError("optimizer.step.eta applies only to the constant "
                        "schedule");
    }
    cfg.optimizer.step.alpha =
        get_or<double>(step, "optimizer.step", "alpha", 1.0);
    cfg.optimizer.step.lambda =
        get_or<double>(step, "optimizer.step", "lambda", 1.0);
    cfg.optimizer.step.smoothness =
        get_or<double>(step, "optimizer.step", "smoothness", 1.0);
    cfg.optimizer.step.c_qnz =
        get_or<double>(step, "optimizer.step", "c_qnz", 1.0);
  } else {
    throw ConfigError("optimizer.step.type must be constant or inverse_t "
                      "(got '" + step_type + "')");
  }

  const json codec = doc.value("codec", json::object());
  require_keys(codec, "codec", {"type", "levels", "keep"});
  cfg.codec.type =
      parse_codec_type(get_or<std::string>(codec, "codec", "type", "ternary"));
  cfg.codec.levels = get_or<int>(codec, "codec", "levels", 1);
  cfg.codec.keep = get_or<double>(codec, "codec", "keep", 1.0);

  const json norm = doc.value("normalization", json::object());
  require_keys(norm, "normalization",
               {"mode", "strategy", "tau_max", "update_period", "eps"});
  cfg.mode.tag =
      parse_mode(get_or<std::string>(norm, "normalization", "mode", "subtract"));
  cfg.mode.eps = get_or<double>(norm, "normalization", "eps", 1e-12);
  cfg.reference.tag = parse_strategy(
      get_or<std::string>(norm, "normalization", "strategy", "zero"));
  cfg.reference.tau_max = get_or<int>(norm, "normalization", "tau_max", 1);
  cfg.reference.update_period =
      get_or<int>(norm, "normalization", "update_period", 1);

  const json budget = doc.value("budget", json::object());
  require_keys(budget, "budget", {"max_rounds", "max_bits"});
  if (budget.contains("max_rounds")) {
    cfg.budget.max_rounds =
        get_required<std::int64_t>(budget, "budget", "max_rounds");
  }
  if (budget.contains("max_bits")) {
    cfg.budget.max_bits =
        get_required<std::uint64_t>(budget, "budget", "max_bits");
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["label"] = cfg.label;
  doc["master_seed"] = cfg.master_seed;
  if (!cfg.seeds.empty()) doc["seeds"] = cfg.seeds;
  doc["threads"] = cfg.threads;
  doc["broadcast_params"] = cfg.broadcast_params;
  doc["diag_resamples"] = cfg.diag_resamples;

  json problem;
  problem["type"] = problem_type_name(cfg.problem.type);
  if (cfg.problem.type == ProblemType::kLogReg) {
    problem["n"] = cfg.problem.n;
    problem["d"] = cfg.problem.d;
    problem["c_sk"] = cfg.problem.c_sk;
    problem["c_th"] = cfg.problem.c_th;
    problem["lambda2"] = cfg.problem.lambda2;
    problem["data_seed"] = cfg.problem.data_seed;
  } else if (cfg.problem.init.has_value()) {
    problem["init"] = *cfg.problem.init;
  }
  doc["problem"] = problem;

  doc["cluster"] = {{"workers", cfg.workers}, {"batch_size", cfg.batch_size}};

  json optimizer;
  optimizer["type"] = opt_type_name(cfg.optimizer.type);
  if (cfg.optimizer.type == OptType::kSvrg) {
    optimizer["epoch_len"] = cfg.optimizer.epoch_len;
  }
  if (cfg.optimizer.type == OptType::kLbfgs) {
    optimizer["memory"] = cfg.optimizer.memory;
  }
  json step;
  if (cfg.optimizer.step.type == StepType::kConstant) {
    step["type"] = "constant";
    step["eta"] = cfg.optimizer.step.eta;
  } else {
    step["type"] = "inverse_t";
    step["alpha"] = cfg.optimizer.step.alpha;
    step["lambda"] = cfg.optimizer.step.lambda;
    step["smoothness"] = cfg.optimizer.step.smoothness;
    step["c_qnz"] = cfg.optimizer.step.c_qnz;
  }
  optimizer["step"] = step;
  doc["optimizer"] = optimizer;

  json codec;
  codec["type"] = codec_type_name(cfg.codec.type);
  if (cfg.codec.type == CodecType::kQuant) codec["levels"] = cfg.codec.levels;
  if (cfg.codec.type == CodecType::kSparse) codec["keep"] = cfg.codec.keep;
  doc["codec"] = codec;

  doc["normalization"] = {{"mode", mode_name(cfg.mode.tag)},
                          {"strategy", strategy_name(cfg.reference.tag)},
                          {"tau_max", cfg.reference.tau_max},
                          {"update_period", cfg.reference.update_period},
                          {"eps", cfg.mode.eps}};

  json budget;
  if (cfg.budget.max_rounds.has_value()) {
    budget["max_rounds"] = *cfg.budget.max_rounds;
  }
  if (cfg.budget.max_bits.has_value()) budget["max_bits"] = *cfg.budget.max_bits;
  doc["budget"] = budget;
  return doc;
}

json run_manifest(const ExperimentConfig& cfg) {
  json doc;
  doc["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  doc["run_id"] = cfg.label;
  doc["master_seed"] = cfg.master_seed;
  doc["config"] = config_to_json(cfg);
  return doc;
}

std::vector<SweepAxis> parse_grid(const json& doc) {
  std::vector<SweepAxis> axes;
  if (!doc.contains("grid")) return axes;
  const json& grid = doc.at("grid");
  require_keys(grid, "grid", {"axes"});
  if (!grid.contains("axes") || !grid.at("axes").is_array()) {
    throw ConfigError("grid.axes must be an array");
  }
  for (const auto& axis : grid.at("axes")) {
    require_keys(axis, "grid.axes[]", {"path", "values"});
    SweepAxis out;
    out.path = get_required<std::string>(axis, "grid.axes[]", "path");
    if (!axis.contains("values") || !axis.at("values").is_array() ||
        axis.at("values").empty()) {
      throw ConfigError("grid axis '" + out.path +
                        "' needs a nonempty values array");
    }
    for (const auto& v : axis.at("values")) out.values.push_back(v);
    axes.push_back(std::move(out));
  }
  if (axes.empty()) throw ConfigError("grid.axes must not be empty");
  return axes;
}

void set_by_path(json& doc, const std::string& path, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    if (dot == std::string::npos) {
      (*node)[path.substr(start)] = value;
      return;
    }
    node = &(*node)[path.substr(start, dot - start)];
    start = dot + 1;
  }
}

}  // namespace tng
