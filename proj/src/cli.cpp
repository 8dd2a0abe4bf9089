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

#include "tng/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tng/config.hpp"
#include "tng/plot.hpp"
#include "tng/sim.hpp"

namespace tng::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ConfigError("short write to " + path.string());
}

int exception_exit_code() {
  try {
    throw;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

void write_run_outputs(const fs::path& dir, const ExperimentConfig& cfg,
                       const RunResult& result) {
  fs::create_directories(dir);
  write_file(dir / "trace.csv", trace_csv(cfg.label, result.logs));
  write_file(dir / "run_manifest.json", run_manifest(cfg).dump(2) + "\n");
}

int sweep_threads() {
  const char* env = std::getenv("TNG_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override) {
  try {
    ExperimentConfig cfg = load_config(config_path);
    if (seed_override.has_value()) cfg.master_seed = *seed_override;
    const RunResult result = run_experiment(cfg);
    write_run_outputs(out_dir, cfg, result);
    return 0;
  } catch (...) {
    return exception_exit_code();
  }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file " + config_path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw ConfigError("invalid JSON in " + config_path + ": " + e.what());
    }
    const std::vector<SweepAxis> axes = parse_grid(doc);
    if (axes.empty()) throw ConfigError("sweep config needs a grid block");
    json base = doc;
    base.erase("grid");
    const ExperimentConfig base_cfg = parse_config(base);
    std::vector<std::uint64_t> seeds = base_cfg.seeds;
    if (seeds.empty()) seeds.push_back(base_cfg.master_seed);

    // Cartesian cell index list, first axis slowest.
    std::size_t n_cells = 1;
    for (const auto& axis : axes) n_cells *= axis.values.size();
    struct Task {
      std::vector<std::size_t> cell;
      std::uint64_t seed;
      json doc;
      fs::path dir;
      std::string label;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < n_cells; ++c) {
      std::vector<std::size_t> cell(axes.size());
      std::size_t rem = c;
      for (std::size_t a = axes.size(); a-- > 0;) {
        cell[a] = rem % axes[a].values.size();
        rem /= axes[a].values.size();
      }
      json cell_doc = base;
      std::string cell_name = "cell";
      for (std::size_t a = 0; a < axes.size(); ++a) {
        set_by_path(cell_doc, axes[a].path, axes[a].values[cell[a]]);
        cell_name += "_" + std::to_string(cell[a]);
      }
      for (std::uint64_t seed : seeds) {
        Task t;
        t.cell = cell;
        t.seed = seed;
        t.doc = cell_doc;
        t.dir = fs::path(out_dir) / cell_name / ("seed_" + std::to_string(seed));
        t.label = base_cfg.label + "-" + cell_name + "-s" + std::to_string(seed);
        tasks.push_back(std::move(t));
      }
    }

    // Validate every cell before running anything.
    std::vector<ExperimentConfig> cfgs(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      cfgs[i] = parse_config(tasks[i].doc);
      cfgs[i].master_seed = tasks[i].seed;
      cfgs[i].label = tasks[i].label;
    }

    struct Row {
      std::string cell_id;
      std::vector<std::string> axis_values;
      std::uint64_t seed;
      double suboptimality;
      std::uint64_t cumulative_bits;
    };
    std::vector<Row> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
      for (std::size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1)) {
        try {
          const RunResult result = run_experiment(cfgs[i]);
          write_run_outputs(tasks[i].dir, cfgs[i], result);
          Row row;
          row.cell_id = tasks[i].dir.parent_path().filename().string();
          for (std::size_t a = 0; a < axes.size(); ++a) {
            row.axis_values.push_back(
                json_scalar_to_string(axes[a].values[tasks[i].cell[a]]));
          }
          row.seed = tasks[i].seed;
          if (result.logs.empty()) {
            row.suboptimality = std::nan("");
            row.cumulative_bits = 0;
          } else {
            row.suboptimality = result.logs.back().suboptimality;
            row.cumulative_bits = result.logs.back().cumulative_bits;
          }
          rows[i] = std::move(row);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };

    const int n_threads =
        std::min<int>(sweep_threads(), static_cast<int>(tasks.size()));
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::string summary = "cell";
    for (const auto& axis : axes) summary += "," + axis.path;
    summary += ",seed,suboptimality,cumulative_bits\n";
    for (const auto& row : rows) {
      summary += row.cell_id;
      for (const auto& v : row.axis_values) summary += "," + v;
      summary += "," + std::to_string(row.seed);
      summary += "," + fmt17(row.suboptimality);
      summary += "," + std::to_string(row.cumulative_bits);
      summary += "\n";
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "summary.csv", summary);
    return 0;
  } catch (...) {
    return exception_exit_code();
  }
}

int cmd_plot(const std::vector<std::string>& trace_paths,
             const std::string& out_path, const std::string& x_axis) {
  try {
    if (trace_paths.empty()) throw ConfigError("no trace files given");
    if (x_axis != "bits" && x_axis != "rounds") {
      throw ConfigError("x axis must be 'bits' or 'rounds'");
    }
    std::vector<PlotSeries> series;
    for (const std::string& path : trace_paths) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot read trace " + path);
      std::string line;
      if (!std::getline(in, line)) {
        throw ConfigError("empty trace file " + path);
      }
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.pop_back();
      }
      if (line != kTraceCsvHeader) {
        throw ConfigError("unexpected CSV header in " + path);
      }
      PlotSeries s;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 9) {
          throw ConfigError("malformed CSV row in " + path);
        }
        if (s.label.empty()) s.label = fields[0];
        try {
          const double x = x_axis == "rounds" ? std::stod(fields[1])
                                              : std::stod(fields[8]);
          s.points.emplace_back(x, std::stod(fields[3]));
        } catch (const std::exception&) {
          throw ConfigError("malformed CSV row in " + path);
        }
      }
      if (s.points.empty()) {
        throw ConfigError("trace file " + path + " has no data rows");
      }
      // Prefer the run manifest label when one sits next to the trace.
      const fs::path manifest =
          fs::path(path).parent_path() / "run_manifest.json";
      if (fs::exists(manifest)) {
        std::ifstream mf(manifest);
        json doc;
        try {
          mf >> doc;
          if (doc.contains("run_id")) s.label = doc["run_id"].get<std::string>();
        } catch (const json::exception&) {
          // keep the run_id column label
        }
      }
      series.push_back(std::move(s));
    }
    const std::string svg = svg_line_chart(
        series, x_axis == "rounds" ? "rounds" : "cumulative bits",
        "suboptimality");
    write_file(out_path, svg);
    return 0;
  } catch (...) {
    return exception_exit_code();
  }
}

int run_main(int argc, const char* const* argv) {
  CLI::App app{"communication-efficient distributed optimization simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::vector<std::string> traces;
  std::string x_axis = "bits";

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config_path, "config JSON")->required();
  run->add_option("--out", out_path, "output directory")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "override the master seed");

  CLI::App* sweep = app.add_subcommand("sweep", "run a config grid");
  sweep->add_option("--config", config_path, "config JSON with a grid block")
      ->required();
  sweep->add_option("--out", out_path, "output directory")->required();

  CLI::App* plot = app.add_subcommand("plot", "render traces to SVG");
  plot->add_option("traces", traces, "trace.csv files")->required();
  plot->add_option("--out", out_path, "output SVG path")->required();
  plot->add_option("--x-axis", x_axis, "x axis: bits or rounds")
      ->check(CLI::IsMember({"bits", "rounds"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run->parsed()) {
    std::optional<std::uint64_t> seed_override;
    if (seed_opt->count() > 0) seed_override = seed;
    return cmd_run(config_path, out_path, seed_override);
  }
  if (sweep->parsed()) return cmd_sweep(config_path, out_path);
  if (plot->parsed()) return cmd_plot(traces, out_path, x_axis);
  return 2;
}

}  // namespace tng::cli
