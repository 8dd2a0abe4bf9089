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

#include "tng/problems.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tng {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

// log(1 + exp(z)) without overflow.
double log1p_exp(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(m)) without overflow.
double sigmoid_neg(double m) {
  if (m >= 0.0) {
    const double t = std::exp(-m);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(m));
}

}  // namespace

double surface_eval(SurfaceTag tag, double x, double y) {
  switch (tag) {
    case SurfaceTag::kAckley: {
      const double r = std::sqrt(0.5 * (x * x + y * y));
      const double c = 0.5 * (std::cos(2.0 * kPi * x) + std::cos(2.0 * kPi * y));
      return 20.0 - 20.0 * std::exp(-0.2 * r) - std::exp(c) + kE;
    }
    case SurfaceTag::kBooth: {
      const double a = x + 2.0 * y - 7.0;
      const double b = 2.0 * x + y - 5.0;
      return a * a + b * b;
    }
    case SurfaceTag::kRosenbrock: {
      const double a = x - y * y;
      const double b = x - 1.0;
      return 100.0 * a * a + b * b;
    }
  }
  throw std::logic_error("unreachable surface tag");
}

std::pair<double, double> surface_grad(SurfaceTag tag, double x, double y) {
  switch (tag) {
    case SurfaceTag::kAckley: {
      const double r = std::sqrt(0.5 * (x * x + y * y));
      const double c = 0.5 * (std::cos(2.0 * kPi * x) + std::cos(2.0 * kPi * y));
      const double ec = std::exp(c);
      double gx = kPi * std::sin(2.0 * kPi * x) * ec;
      double gy = kPi * std::sin(2.0 * kPi * y) * ec;
      if (r > 0.0) {
        const double radial = 2.0 * std::exp(-0.2 * r) / r;
        gx += radial * x;
        gy += radial * y;
      }
      return {gx, gy};
    }
    case SurfaceTag::kBooth: {
      const double a = x + 2.0 * y - 7.0;
      const double b = 2.0 * x + y - 5.0;
      return {2.0 * a + 4.0 * b, 4.0 * a + 2.0 * b};
    }
    case SurfaceTag::kRosenbrock: {
      const double a = x - y * y;
      return {200.0 * a + 2.0 * (x - 1.0), -400.0 * y * a};
    }
  }
  throw std::logic_error("unreachable surface tag");
}

std::pair<double, double> surface_minimum(SurfaceTag tag) {
  switch (tag) {
    case SurfaceTag::kAckley:
      return {0.0, 0.0};
    case SurfaceTag::kBooth:
      return {1.0, 3.0};
    case SurfaceTag::kRosenbrock:
      return {1.0, 1.0};
  }
  throw std::logic_error("unreachable surface tag");
}

Vec noisy_grad(SurfaceTag tag, const Vec& point, RngStream& stream) {
  if (point.size() != 2) throw DimensionError("surface point must be 2-d");
  auto [gx, gy] = surface_grad(tag, point[0], point[1]);
  return {gx + stream.gaussian(), gy + stream.gaussian()};
}

SyntheticDataset gen_synthetic(std::int32_t n, std::int32_t d, double c_sk,
                               double c_th, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("dataset needs n, d >= 1");
  if (!(c_sk > 0.0) || c_sk > 1.0) {
    throw std::invalid_argument("c_sk must lie in (0, 1]");
  }
  if (c_th < 0.0 || c_th > 1.0) {
    throw std::invalid_argument("c_th must lie in [0, 1]");
  }

  SyntheticDataset data;
  data.n = n;
  data.d = d;
  data.c_sk = c_sk;
  data.c_th = c_th;
  data.seed = seed;

  RngStream normal = derive_stream(seed, 0, 0, purpose::kDataNormal);
  data.features.resize(std::size_t(n) * d);
  for (double& x : data.features) x = normal.gaussian();

  RngStream magnitude = derive_stream(seed, 0, 0, purpose::kDataMagnitude);
  Vec mags(d);
  for (std::int32_t j = 0; j < d; ++j) {
    mags[j] = magnitude.uniform();
    if (mags[j] <= c_th) mags[j] *= c_sk;
  }

  RngStream planted = derive_stream(seed, 0, 0, purpose::kDataPlanted);
  data.planted = gaussian(planted, static_cast<std::size_t>(d));

  // Labels come from the unscaled rows; scaling happens afterwards.
  data.labels.resize(n);
  for (std::int32_t i = 0; i < n; ++i) {
    const double* row = data.features.data() + std::size_t(i) * d;
    double margin = 0.0;
    for (std::int32_t j = 0; j < d; ++j) margin += row[j] * data.planted[j];
    data.labels[i] = margin >= 0.0 ? 1 : -1;
  }
  for (std::int32_t i = 0; i < n; ++i) {
    double* row = data.features.data() + std::size_t(i) * d;
    for (std::int32_t j = 0; j < d; ++j) row[j] *= mags[j];
  }
  return data;
}

void save_dataset(const SyntheticDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  auto put = [&out](const void* p, std::size_t bytes) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
  };
  const std::uint32_t n = static_cast<std::uint32_t>(data.n);
  const std::uint32_t d = static_cast<std::uint32_t>(data.d);
  put(&n, 4);
  put(&d, 4);
  put(&data.c_sk, 8);
  put(&data.c_th, 8);
  put(&data.seed, 8);
  put(data.features.data(), data.features.size() * 8);
  put(data.labels.data(), data.labels.size());
  if (!out) throw std::runtime_error("short write to " + path);
}

SyntheticDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto get = [&in, &path](void* p, std::size_t bytes) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error("truncated dataset file " + path);
  };
  SyntheticDataset data;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  get(&n, 4);
  get(&d, 4);
  get(&data.c_sk, 8);
  get(&data.c_th, 8);
  get(&data.seed, 8);
  data.n = static_cast<std::int32_t>(n);
  data.d = static_cast<std::int32_t>(d);
  if (data.n < 1 || data.d < 1) throw std::runtime_error("bad dataset header");
  data.features.resize(std::size_t(data.n) * data.d);
  get(data.features.data(), data.features.size() * 8);
  data.labels.resize(data.n);
  get(data.labels.data(), data.labels.size());
  return data;
}

LogRegProblem::LogRegProblem(SyntheticDataset data, double lambda2)
    : data_(std::move(data)), lambda2_(lambda2) {
  if (lambda2_ < 0.0) throw std::invalid_argument("lambda2 must be >= 0");
}

double LogRegProblem::loss(const Vec& w,
                           const std::vector<std::int32_t>& indices) const {
  if (indices.empty()) throw std::invalid_argument("empty index batch");
  if (w.size() != static_cast<std::size_t>(data_.d)) {
    throw DimensionError("parameter dimension mismatch");
  }
  double acc = 0.0;
  for (std::int32_t i : indices) {
    const double* row = data_.row(i);
    double margin = 0.0;
    for (std::int32_t j = 0; j < data_.d; ++j) margin += row[j] * w[j];
    acc += log1p_exp(-static_cast<double>(data_.labels[i]) * margin);
  }
  return acc / static_cast<double>(indices.size()) +
         0.5 * lambda2_ * l2_norm_sq(w);
}

Vec LogRegProblem::grad(const Vec& w,
                        const std::vector<std::int32_t>& indices) const {
  if (indices.empty()) throw std::invalid_argument("empty index batch");
  if (w.size() != static_cast<std::size_t>(data_.d)) {
    throw DimensionError("parameter dimension mismatch");
  }
  Vec g = zeros(w.size());
  for (std::int32_t i : indices) {
    const double* row = data_.row(i);
    double margin = 0.0;
    for (std::int32_t j = 0; j < data_.d; ++j) margin += row[j] * w[j];
    const double b = static_cast<double>(data_.labels[i]);
    const double coeff = -b * sigmoid_neg(b * margin);
    for (std::int32_t j = 0; j < data_.d; ++j) g[j] += coeff * row[j];
  }
  const double inv = 1.0 / static_cast<double>(indices.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = g[j] * inv + lambda2_ * w[j];
  return g;
}

Vec LogRegProblem::grad_single(const Vec& w, std::int32_t index) const {
  return grad(w, {index});
}

double LogRegProblem::full_loss(const Vec& w) const {
  std::vector<std::int32_t> all(data_.n);
  for (std::int32_t i = 0; i < data_.n; ++i) all[i] = i;
  return loss(w, all);
}

Vec LogRegProblem::full_grad(const Vec& w) const {
  std::vector<std::int32_t> all(data_.n);
  for (std::int32_t i = 0; i < data_.n; ++i) all[i] = i;
  return grad(w, all);
}

double LogRegProblem::smoothness_bound() const {
  if (smoothness_.has_value()) return *smoothness_;
  const std::int32_t n = data_.n;
  const std::int32_t d = data_.d;
  Vec u(d, 1.0 / std::sqrt(static_cast<double>(d)));
  double eig = 0.0;
  for (int iter = 0; iter < 300; ++iter) {
    // v = (1/(4n)) A^T (A u)
    Vec au(n, 0.0);
    for (std::int32_t i = 0; i < n; ++i) {
      const double* row = data_.row(i);
      double s = 0.0;
      for (std::int32_t j = 0; j < d; ++j) s += row[j] * u[j];
      au[i] = s;
    }
    Vec v(d, 0.0);
    for (std::int32_t i = 0; i < n; ++i) {
      const double* row = data_.row(i);
      for (std::int32_t j = 0; j < d; ++j) v[j] += row[j] * au[i];
    }
    const double inv4n = 1.0 / (4.0 * static_cast<double>(n));
    for (std::int32_t j = 0; j < d; ++j) v[j] *= inv4n;
    const double norm = l2_norm(v);
    if (norm == 0.0) break;
    const double next = dot(u, v);
    u = scale(v, 1.0 / norm);
    if (iter > 10 && std::fabs(next - eig) <= 1e-13 * std::fabs(next)) {
      eig = next;
      break;
    }
    eig = next;
  }
  smoothness_ = eig + lambda2_;
  return *smoothness_;
}

std::pair<Vec, double> LogRegProblem::solve_reference_optimum(double tol) const {
  if (optimum_.has_value()) return *optimum_;
  if (!(lambda2_ > 0.0)) {
    throw std::invalid_argument(
        "reference optimum needs lambda2 > 0 for uniqueness");
  }
  const double big_l = smoothness_bound();
  const double q = lambda2_ / big_l;
  const double beta = (1.0 - std::sqrt(q)) / (1.0 + std::sqrt(q));
  Vec w = zeros(data_.d);
  Vec y = w;
  const long max_iters = 500000;
  for (long k = 0; k < max_iters; ++k) {
    const Vec g = full_grad(y);
    if (l2_norm(g) <= tol) {
      optimum_ = std::make_pair(y, full_loss(y));
      return *optimum_;
    }
    Vec w_next = sub(y, scale(g, 1.0 / big_l));
    y = add(w_next, scale(sub(w_next, w), beta));
    w = std::move(w_next);
  }
  throw std::runtime_error(
      "reference optimum did not reach tol " + std::to_string(tol) +
      " within " + std::to_string(max_iters) +
      " iterations (grad norm " + std::to_string(l2_norm(full_grad(w))) + ")");
}

std::vector<std::vector<std::int32_t>> partition(std::int32_t n,
                                                 std::int32_t m) {
  if (m < 1 || m > n) {
    throw std::invalid_argument("partition needs 1 <= m <= n");
  }
  std::vector<std::vector<std::int32_t>> shards(m);
  const std::int32_t base = n / m;
  const std::int32_t extra = n % m;
  std::int32_t start = 0;
  for (std::int32_t s = 0; s < m; ++s) {
    const std::int32_t size = base + (s < extra ? 1 : 0);
    shards[s].reserve(size);
    for (std::int32_t i = 0; i < size; ++i) shards[s].push_back(start + i);
    start += size;
  }
  return shards;
}

}  // namespace tng
