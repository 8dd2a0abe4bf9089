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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tng/cli.hpp"
#include "tng/config.hpp"
#include "tng/sim.hpp"

using namespace tng;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tng_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out);
  out << content;
}

json booth_doc() {
  return json::parse(R"({
    "label": "booth-test",
    "master_seed": 3,
    "problem": {"type": "booth"},
    "cluster": {"workers": 1, "batch_size": 1},
    "optimizer": {"type": "sgd", "step": {"type": "constant", "eta": 1e-4}},
    "codec": {"type": "ternary"},
    "normalization": {"mode": "subtract", "strategy": "zero"},
    "budget": {"max_rounds": 50}
  })");
}

json logreg_doc() {
  return json::parse(R"({
    "label": "logreg-test",
    "master_seed": 5,
    "problem": {"type": "logreg", "n": 64, "d": 16, "c_sk": 0.5,
                "c_th": 0.6, "lambda2": 0.05, "data_seed": 2},
    "cluster": {"workers": 2, "batch_size": 4},
    "optimizer": {"type": "sgd", "step": {"type": "constant", "eta": 0.05}},
    "codec": {"type": "ternary"},
    "normalization": {"mode": "subtract", "strategy": "param_diff"},
    "budget": {"max_rounds": 30}
  })");
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

int count_occurrences(const std::string& s, const std::string& needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = s.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("cmd_run writes a trace and manifest") {
  TempDir tmp;
  const fs::path config = tmp.path / "config.json";
  spit(config, booth_doc().dump());
  const fs::path out = tmp.path / "out";
  CHECK(cli::cmd_run(config.string(), out.string(), std::nullopt) == 0);

  const std::string trace = slurp(out / "trace.csv");
  CHECK(count_lines(trace) == 51);  // header + 50 budgeted rounds
  CHECK(trace.rfind(kTraceCsvHeader, 0) == 0);
  CHECK(trace.find("booth-test,0,") != std::string::npos);

  const json manifest = json::parse(slurp(out / "run_manifest.json"));
  CHECK(manifest["artifact"]["name"] == "tng");
  CHECK(manifest["run_id"] == "booth-test");

  // Re-running the same config is byte-identical.
  const fs::path out2 = tmp.path / "out2";
  CHECK(cli::cmd_run(config.string(), out2.string(), std::nullopt) == 0);
  CHECK(slurp(out2 / "trace.csv") == trace);
}

TEST_CASE("manifest config reproduces the identical run") {
  TempDir tmp;
  const fs::path config = tmp.path / "config.json";
  spit(config, logreg_doc().dump());
  const fs::path out = tmp.path / "out";
  REQUIRE(cli::cmd_run(config.string(), out.string(), std::nullopt) == 0);

  const json manifest = json::parse(slurp(out / "run_manifest.json"));
  const fs::path config2 = tmp.path / "resolved.json";
  spit(config2, manifest["config"].dump());
  const fs::path out2 = tmp.path / "out_resolved";
  REQUIRE(cli::cmd_run(config2.string(), out2.string(), std::nullopt) == 0);
  CHECK(slurp(out2 / "trace.csv") == slurp(out / "trace.csv"));
}

TEST_CASE("config errors exit with code 2") {
  TempDir tmp;
  const fs::path out = tmp.path / "out";

  json bad_workers = booth_doc();
  bad_workers["cluster"]["workers"] = 0;
  const fs::path c1 = tmp.path / "bad_workers.json";
  spit(c1, bad_workers.dump());
  CHECK(cli::cmd_run(c1.string(), out.string(), std::nullopt) == 2);

  json unknown_key = booth_doc();
  unknown_key["cluster"]["wrokers"] = 1;
  const fs::path c2 = tmp.path / "unknown.json";
  spit(c2, unknown_key.dump());
  CHECK(cli::cmd_run(c2.string(), out.string(), std::nullopt) == 2);

  const fs::path c3 = tmp.path / "not_json.json";
  spit(c3, "not json at all");
  CHECK(cli::cmd_run(c3.string(), out.string(), std::nullopt) == 2);

  CHECK(cli::cmd_run((tmp.path / "missing.json").string(), out.string(),
                     std::nullopt) == 2);
}

TEST_CASE("numeric blowup exits with code 3") {
  TempDir tmp;
  json doc = booth_doc();
  doc["problem"]["type"] = "rosenbrock";
  doc["problem"]["init"] = {5.0, 5.0};
  doc["optimizer"]["step"]["eta"] = 10.0;  // far past the stability limit
  doc["budget"]["max_rounds"] = 500;
  const fs::path config = tmp.path / "blowup.json";
  spit(config, doc.dump());
  CHECK(cli::cmd_run(config.string(), (tmp.path / "out").string(),
                     std::nullopt) == 3);
}

TEST_CASE("seed override changes the trace") {
  TempDir tmp;
  const fs::path config = tmp.path / "config.json";
  spit(config, booth_doc().dump());
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  REQUIRE(cli::cmd_run(config.string(), a.string(), std::nullopt) == 0);
  REQUIRE(cli::cmd_run(config.string(), b.string(), 12345) == 0);
  CHECK(slurp(a / "trace.csv") != slurp(b / "trace.csv"));
}

TEST_CASE("sweep runs the cartesian product") {
  TempDir tmp;
  json doc = logreg_doc();
  doc["budget"]["max_rounds"] = 10;
  doc["seeds"] = {1, 2, 3};
  doc["grid"] = {{"axes", json::array({
                              {{"path", "problem.c_sk"}, {"values", {1.0, 0.25}}},
                              {{"path", "optimizer.step.eta"},
                               {"values", {0.05, 0.02}}},
                          })}};
  const fs::path config = tmp.path / "sweep.json";
  spit(config, doc.dump());
  const fs::path out = tmp.path / "sweep_out";
  REQUIRE(cli::cmd_sweep(config.string(), out.string()) == 0);

  const std::string summary = slurp(out / "summary.csv");
  CHECK(count_lines(summary) == 13);  // header + 2*2 cells * 3 seeds
  CHECK(summary.rfind("cell,problem.c_sk,optimizer.step.eta,seed,"
                      "suboptimality,cumulative_bits",
                      0) == 0);
  CHECK(fs::exists(out / "cell_0_0" / "seed_1" / "trace.csv"));
  CHECK(fs::exists(out / "cell_1_1" / "seed_3" / "run_manifest.json"));
}

TEST_CASE("sweep parallelism does not change the summary") {
  TempDir tmp;
  json doc = logreg_doc();
  doc["budget"]["max_rounds"] = 10;
  doc["seeds"] = {1, 2};
  doc["grid"] = {{"axes", json::array({{{"path", "problem.c_sk"},
                                        {"values", {1.0, 0.25}}}})}};
  const fs::path config = tmp.path / "sweep.json";
  spit(config, doc.dump());

  ::setenv("TNG_THREADS", "1", 1);
  REQUIRE(cli::cmd_sweep(config.string(), (tmp.path / "serial").string()) == 0);
  ::setenv("TNG_THREADS", "4", 1);
  REQUIRE(cli::cmd_sweep(config.string(), (tmp.path / "parallel").string()) ==
          0);
  ::unsetenv("TNG_THREADS");
  CHECK(slurp(tmp.path / "serial" / "summary.csv") ==
        slurp(tmp.path / "parallel" / "summary.csv"));
  CHECK(slurp(tmp.path / "serial" / "cell_1" / "seed_2" / "trace.csv") ==
        slurp(tmp.path / "parallel" / "cell_1" / "seed_2" / "trace.csv"));
}

TEST_CASE("sweep rejects empty or missing grids") {
  TempDir tmp;
  json no_grid = logreg_doc();
  const fs::path c1 = tmp.path / "no_grid.json";
  spit(c1, no_grid.dump());
  CHECK(cli::cmd_sweep(c1.string(), (tmp.path / "o1").string()) == 2);

  json empty_axis = logreg_doc();
  empty_axis["grid"] = {{"axes", json::array({{{"path", "problem.c_sk"},
                                               {"values", json::array()}}})}};
  const fs::path c2 = tmp.path / "empty_axis.json";
  spit(c2, empty_axis.dump());
  CHECK(cli::cmd_sweep(c2.string(), (tmp.path / "o2").string()) == 2);
}

TEST_CASE("desk-scale skewness by regularization sweep") {
  TempDir tmp;
  json doc = logreg_doc();
  doc["budget"]["max_rounds"] = 8;
  doc["grid"] = {{"axes", json::array({
                              {{"path", "problem.c_sk"},
                               {"values", {0.25, 0.0625, 0.015625}}},
                              {{"path", "problem.lambda2"},
                               {"values", {0.05, 0.025, 0.0125}}},
                          })}};
  const fs::path config = tmp.path / "grid9.json";
  spit(config, doc.dump());
  const fs::path out = tmp.path / "grid9_out";
  REQUIRE(cli::cmd_sweep(config.string(), out.string()) == 0);
  CHECK(count_lines(slurp(out / "summary.csv")) == 10);  // header + 9 cells
}

TEST_CASE("plot renders one polyline per trace") {
  TempDir tmp;
  const fs::path config = tmp.path / "config.json";
  spit(config, booth_doc().dump());
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  REQUIRE(cli::cmd_run(config.string(), a.string(), std::nullopt) == 0);
  REQUIRE(cli::cmd_run(config.string(), b.string(), 99) == 0);

  const fs::path svg = tmp.path / "plot.svg";
  CHECK(cli::cmd_plot({(a / "trace.csv").string(), (b / "trace.csv").string()},
                      svg.string(), "bits") == 0);
  const std::string content = slurp(svg);
  CHECK(count_occurrences(content, "<polyline") == 2);
  CHECK(content.find("booth-test") != std::string::npos);

  CHECK(cli::cmd_plot({(a / "trace.csv").string()},
                      (tmp.path / "rounds.svg").string(), "rounds") == 0);
}

TEST_CASE("plot rejects malformed input") {
  TempDir tmp;
  const fs::path empty = tmp.path / "empty.csv";
  spit(empty, "");
  CHECK(cli::cmd_plot({empty.string()}, (tmp.path / "x.svg").string(),
                      "bits") == 2);

  const fs::path header_only = tmp.path / "header.csv";
  spit(header_only, std::string(kTraceCsvHeader) + "\n");
  CHECK(cli::cmd_plot({header_only.string()}, (tmp.path / "y.svg").string(),
                      "bits") == 2);

  const fs::path bad = tmp.path / "bad.csv";
  spit(bad, "round,loss\n0,1\n");
  CHECK(cli::cmd_plot({bad.string()}, (tmp.path / "z.svg").string(), "bits") ==
        2);

  CHECK(cli::cmd_plot({(tmp.path / "nope.csv").string()},
                      (tmp.path / "w.svg").string(), "bits") == 2);
}

TEST_CASE("binary entry point") {
  TempDir tmp;
  const fs::path config = tmp.path / "config.json";
  spit(config, booth_doc().dump());
  const fs::path out = tmp.path / "out";
  const std::string cmd = std::string(TNG_CLI_BINARY) + " run --config " +
                          config.string() + " --out " + out.string() +
                          " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out / "trace.csv"));

  const std::string bad = std::string(TNG_CLI_BINARY) + " frobnicate >/dev/null 2>&1";
  CHECK(std::system(bad.c_str()) != 0);
}

TEST_CASE("csv schema golden header") {
  CHECK(std::string(kTraceCsvHeader) ==
        "run_id,round,objective,suboptimality,grad_norm,cnz_hat,"
        "uplink_bits_round,broadcast_bits_round,cumulative_bits");
}
