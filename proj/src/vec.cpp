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

#include "tng/vec.hpp"

#include <cmath>
#include <string>

namespace tng {

void check_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector dimension mismatch: " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_finite(const Vec& v, const char* what) {
  if (!all_finite(v)) {
    throw std::invalid_argument(std::string("non-finite entries in ") + what);
  }
}

Vec zeros(std::size_t d) { return Vec(d, 0.0); }
Vec ones(std::size_t d) { return Vec(d, 1.0); }

double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Vec& a, double c) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

Vec elementwise_mul(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

double l1_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double l2_norm_sq(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double l2_norm(const Vec& v) { return std::sqrt(l2_norm_sq(v)); }

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double mean_scalar(const Vec& v) {
  if (v.empty()) throw DimensionError("mean_scalar of empty vector");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

Vec safe_quotient(const Vec& a, const Vec& b, double eps) {
  check_same_dim(a, b);
  if (!(eps > 0.0)) throw std::invalid_argument("safe_quotient eps must be > 0");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = b[i];
    if (std::fabs(d) < eps) d = (d < 0.0 ? -eps : eps);
    r[i] = a[i] / d;
  }
  return r;
}

Vec gaussian(RngStream& stream, std::size_t d) {
  if (d == 0) throw DimensionError("gaussian draw of zero length");
  Vec r(d);
  for (std::size_t i = 0; i < d; ++i) r[i] = stream.gaussian();
  return r;
}

}  // namespace tng
