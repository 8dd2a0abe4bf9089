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

#ifndef TNG_PROBLEMS_HPP
#define TNG_PROBLEMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tng/rng.hpp"
#include "tng/vec.hpp"

namespace tng {

// --- benchmark surfaces ------------------------------------------------------

enum class SurfaceTag { kAckley, kBooth, kRosenbrock };

double surface_eval(SurfaceTag tag, double x, double y);
std::pair<double, double> surface_grad(SurfaceTag tag, double x, double y);

// Global minimizer; all three surfaces evaluate to 0 there.
std::pair<double, double> surface_minimum(SurfaceTag tag);

// Analytic gradient plus independent standard-normal noise per element.
Vec noisy_grad(SurfaceTag tag, const Vec& point, RngStream& stream);

// --- synthetic dataset -------------------------------------------------------

// Features are standard-normal rows scaled elementwise by one shared
// magnitude vector whose small entries are shrunk (skewness knobs c_sk,
// c_th); labels come from a planted direction on the unscaled rows.
struct SyntheticDataset {
  std::int32_t n = 0;
  std::int32_t d = 0;
  double c_sk = 1.0;
  double c_th = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> features;      // row-major n x d
  std::vector<std::int8_t> labels;   // in {-1, +1}
  Vec planted;                       // empty when loaded from file

  const double* row(std::int32_t i) const { return features.data() + std::size_t(i) * d; }
};

SyntheticDataset gen_synthetic(std::int32_t n, std::int32_t d, double c_sk,
                               double c_th, std::uint64_t seed);

// Binary layout: n (u32), d (u32), c_sk (f64), c_th (f64), seed (u64),
// then n*d row-major f64 features, then n signed-byte labels.
void save_dataset(const SyntheticDataset& data, const std::string& path);
SyntheticDataset load_dataset(const std::string& path);

// --- l2-regularized logistic regression ---------------------------------------

class LogRegProblem {
 public:
  LogRegProblem(SyntheticDataset data, double lambda2);

  std::int32_t num_samples() const { return data_.n; }
  std::int32_t dim() const { return data_.d; }
  double lambda2() const { return lambda2_; }
  const SyntheticDataset& dataset() const { return data_; }

  // Mean logistic loss over the index batch plus (lambda2/2)*||w||^2.
  double loss(const Vec& w, const std::vector<std::int32_t>& indices) const;
  Vec grad(const Vec& w, const std::vector<std::int32_t>& indices) const;
  Vec grad_single(const Vec& w, std::int32_t index) const;

  double full_loss(const Vec& w) const;
  Vec full_grad(const Vec& w) const;

  // Upper bound on the smoothness constant: top eigenvalue of
  // (1/(4n)) A^T A + lambda2 I by power iteration.
  double smoothness_bound() const;

  // Deterministic accelerated full-batch descent until ||grad|| <= tol.
  // The result is cached on first use.
  std::pair<Vec, double> solve_reference_optimum(double tol = 1e-10) const;

 private:
  SyntheticDataset data_;
  double lambda2_;
  mutable std::optional<std::pair<Vec, double>> optimum_;
  mutable std::optional<double> smoothness_;
};

// Disjoint covering contiguous shards with sizes differing by at most one.
std::vector<std::vector<std::int32_t>> partition(std::int32_t n, std::int32_t m);

}  // namespace tng

#endif  // TNG_PROBLEMS_HPP
