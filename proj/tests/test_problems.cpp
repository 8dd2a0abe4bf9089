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

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>

#include "tng/problems.hpp"

using namespace tng;

namespace {

const SurfaceTag kAllSurfaces[] = {SurfaceTag::kAckley, SurfaceTag::kBooth,
                                   SurfaceTag::kRosenbrock};

}  // namespace

TEST_CASE("surface values at the minima and sample points") {
  CHECK(surface_eval(SurfaceTag::kBooth, 1.0, 3.0) == doctest::Approx(0.0));
  CHECK(surface_eval(SurfaceTag::kBooth, 0.0, 0.0) == doctest::Approx(74.0));
  CHECK(surface_eval(SurfaceTag::kRosenbrock, 1.0, 1.0) ==
        doctest::Approx(0.0));
  CHECK(surface_eval(SurfaceTag::kRosenbrock, 0.0, 0.0) ==
        doctest::Approx(1.0));
  CHECK(std::fabs(surface_eval(SurfaceTag::kAckley, 0.0, 0.0)) <= 1e-12);

  for (SurfaceTag tag : kAllSurfaces) {
    const auto [mx, my] = surface_minimum(tag);
    CHECK(std::fabs(surface_eval(tag, mx, my)) <= 1e-12);
    const auto [gx, gy] = surface_grad(tag, mx, my);
    CHECK(std::sqrt(gx * gx + gy * gy) <= 1e-8);
  }
}

TEST_CASE("surface gradients match central finite differences") {
  RngStream s = derive_stream(41, 0, 0, purpose::kTest);
  const double h = 1e-6;
  for (SurfaceTag tag : kAllSurfaces) {
    for (int p = 0; p < 100; ++p) {
      const double x = (s.uniform() - 0.5) * 6.0;
      const double y = (s.uniform() - 0.5) * 6.0;
      const auto [gx, gy] = surface_grad(tag, x, y);
      const double fx =
          (surface_eval(tag, x + h, y) - surface_eval(tag, x - h, y)) / (2 * h);
      const double fy =
          (surface_eval(tag, x, y + h) - surface_eval(tag, x, y - h)) / (2 * h);
      CHECK(std::fabs(gx - fx) <= 1e-5);
      CHECK(std::fabs(gy - fy) <= 1e-5);
    }
  }
}

TEST_CASE("noisy gradient moments and determinism") {
  const Vec point{0.7, -1.1};
  const auto [gx, gy] = surface_grad(SurfaceTag::kBooth, point[0], point[1]);
  RngStream s = derive_stream(42, 0, 0, purpose::kTest);
  const int n = 100000;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec g = noisy_grad(SurfaceTag::kBooth, point, s);
    sx += g[0];
    sy += g[1];
    sxx += (g[0] - gx) * (g[0] - gx);
    syy += (g[1] - gy) * (g[1] - gy);
  }
  const double se = 3.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(sx / n - gx) <= se);
  CHECK(std::fabs(sy / n - gy) <= se);
  CHECK(sxx / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(syy / n == doctest::Approx(1.0).epsilon(0.02));

  RngStream a = derive_stream(42, 1, 2, purpose::kGradNoise);
  RngStream b = derive_stream(42, 1, 2, purpose::kGradNoise);
  CHECK(noisy_grad(SurfaceTag::kBooth, point, a) ==
        noisy_grad(SurfaceTag::kBooth, point, b));
}

TEST_CASE("synthetic dataset generation") {
  const SyntheticDataset data = gen_synthetic(256, 32, 0.25, 0.5, 7);
  CHECK(data.features.size() == 256u * 32u);
  for (auto b : data.labels) CHECK((b == 1 || b == -1));

  // Bit-exact regeneration.
  const SyntheticDataset again = gen_synthetic(256, 32, 0.25, 0.5, 7);
  CHECK(std::memcmp(data.features.data(), again.features.data(),
                    data.features.size() * sizeof(double)) == 0);
  CHECK(data.labels == again.labels);

  CHECK_THROWS_AS(gen_synthetic(0, 4, 0.5, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(4, 4, 0.0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(4, 4, 0.5, 1.5, 1), std::invalid_argument);
}

TEST_CASE("skewness knobs") {
  // c_sk = 1 leaves the magnitudes untouched.
  const SyntheticDataset plain = gen_synthetic(16, 8, 1.0, 0.9, 11);
  const SyntheticDataset shrunk = gen_synthetic(16, 8, 0.5, 0.9, 11);
  bool some_smaller = false;
  for (std::size_t i = 0; i < plain.features.size(); ++i) {
    CHECK(std::fabs(shrunk.features[i]) <= std::fabs(plain.features[i]) + 1e-15);
    if (std::fabs(shrunk.features[i]) <
        std::fabs(plain.features[i]) * 0.75) {
      some_smaller = true;
    }
  }
  CHECK(some_smaller);

  // c_th = 0 shrinks nothing.
  const SyntheticDataset none = gen_synthetic(16, 8, 0.015625, 0.0, 11);
  for (std::size_t i = 0; i < none.features.size(); ++i) {
    CHECK(none.features[i] == plain.features[i]);
  }

  // Expected shrunk fraction at c_th = 0.6 with d = 512.
  const SyntheticDataset big = gen_synthetic(1, 512, 0.015625, 0.6, 13);
  const SyntheticDataset raw = gen_synthetic(1, 512, 1.0, 0.0, 13);
  int shrunk_count = 0;
  for (int j = 0; j < 512; ++j) {
    if (std::fabs(big.features[j]) < std::fabs(raw.features[j]) * 0.5) {
      ++shrunk_count;
    }
  }
  CHECK(std::fabs(shrunk_count / 512.0 - 0.6) <= 0.07);
}

TEST_CASE("logistic loss and gradient") {
  const LogRegProblem problem(gen_synthetic(64, 16, 0.5, 0.6, 21), 0.05);

  // Zero parameter gives log 2 per sample plus no regularizer.
  CHECK(problem.full_loss(zeros(16)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Gradient against central finite differences.
  RngStream s = derive_stream(43, 0, 0, purpose::kTest);
  const Vec w = gaussian(s, 16);
  const Vec g = problem.full_grad(w);
  const double h = 1e-6;
  for (std::size_t j = 0; j < 16; ++j) {
    Vec hi = w;
    Vec lo = w;
    hi[j] += h;
    lo[j] -= h;
    const double fd = (problem.full_loss(hi) - problem.full_loss(lo)) / (2 * h);
    CHECK(std::fabs(g[j] - fd) <= 1e-5);
  }

  // The regularizer contributes lambda2 * w to the gradient.
  const LogRegProblem bare(gen_synthetic(64, 16, 0.5, 0.6, 21), 0.0);
  const Vec g0 = bare.full_grad(w);
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(std::fabs((g[j] - g0[j]) - 0.05 * w[j]) <=
          1e-14 * std::max(1.0, std::fabs(g0[j])));
  }

  CHECK_THROWS_AS(problem.loss(w, {}), std::invalid_argument);
}

TEST_CASE("reference optimum") {
  const LogRegProblem problem(gen_synthetic(128, 16, 0.5, 0.6, 31), 0.05);
  const auto [w_star, f_star] = problem.solve_reference_optimum(1e-10);
  CHECK(f_star <= std::log(2.0));  // no better than the zero parameter
  CHECK(l2_norm(problem.full_grad(w_star)) <= 1e-10);

  // Deterministic re-solve.
  const LogRegProblem again(gen_synthetic(128, 16, 0.5, 0.6, 31), 0.05);
  const auto [w2, f2] = again.solve_reference_optimum(1e-10);
  CHECK(std::memcmp(w_star.data(), w2.data(), w_star.size() * sizeof(double)) ==
        0);
  CHECK(f2 == f_star);
}

TEST_CASE("smoothness bound dominates the gradient curvature") {
  const LogRegProblem problem(gen_synthetic(64, 8, 0.5, 0.6, 37), 0.05);
  const double big_l = problem.smoothness_bound();
  CHECK(big_l > 0.05);  // at least the regularizer

  // Gradient differences obey the bound along random directions.
  RngStream s = derive_stream(44, 0, 0, purpose::kTest);
  for (int t = 0; t < 20; ++t) {
    const Vec a = gaussian(s, 8);
    const Vec b = gaussian(s, 8);
    const double lhs = l2_norm(sub(problem.full_grad(a), problem.full_grad(b)));
    CHECK(lhs <= big_l * l2_norm(sub(a, b)) * (1.0 + 1e-9));
  }
}

TEST_CASE("partition") {
  const auto even = partition(4, 2);
  REQUIRE(even.size() == 2);
  CHECK(even[0] == std::vector<std::int32_t>{0, 1});
  CHECK(even[1] == std::vector<std::int32_t>{2, 3});

  const auto odd = partition(5, 2);
  CHECK(odd[0].size() == 3);
  CHECK(odd[1].size() == 2);

  // Disjoint cover.
  const auto shards = partition(17, 5);
  std::vector<bool> seen(17, false);
  for (const auto& shard : shards) {
    for (std::int32_t i : shard) {
      CHECK_FALSE(seen[i]);
      seen[i] = true;
    }
  }
  for (bool b : seen) CHECK(b);

  CHECK_THROWS_AS(partition(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(partition(3, 0), std::invalid_argument);
}

TEST_CASE("dataset file round trip") {
  namespace fs = std::filesystem;
  const SyntheticDataset data = gen_synthetic(32, 8, 0.25, 0.6, 17);
  const fs::path path = fs::temp_directory_path() / "tng_dataset_test.bin";
  save_dataset(data, path.string());
  const SyntheticDataset back = load_dataset(path.string());
  CHECK(back.n == data.n);
  CHECK(back.d == data.d);
  CHECK(back.c_sk == data.c_sk);
  CHECK(back.c_th == data.c_th);
  CHECK(back.seed == data.seed);
  CHECK(back.features == data.features);
  CHECK(back.labels == data.labels);
  fs::remove(path);
}
