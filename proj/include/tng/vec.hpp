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

#ifndef TNG_VEC_HPP
#define TNG_VEC_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tng/rng.hpp"

namespace tng {

// Dense real vector. All reductions run in index order; repeated
// evaluation is bit-identical, which the simulator's determinism
// contract relies on.
using Vec = std::vector<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void check_same_dim(const Vec& a, const Vec& b);
bool all_finite(const Vec& v);
void check_finite(const Vec& v, const char* what);

Vec zeros(std::size_t d);
Vec ones(std::size_t d);

double dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double c);
Vec elementwise_mul(const Vec& a, const Vec& b);
double l1_norm(const Vec& v);
double l2_norm_sq(const Vec& v);
double l2_norm(const Vec& v);
double inf_norm(const Vec& v);
double mean_scalar(const Vec& v);

// a_d / b_d with the divisor clamped away from zero: entries with
// |b_d| < eps divide by sign(b_d) * eps instead, sign(0) taken as +1.
Vec safe_quotient(const Vec& a, const Vec& b, double eps);

// d independent standard-normal draws from the stream.
Vec gaussian(RngStream& stream, std::size_t d);


}  // namespace tng

#endif  // TNG_VEC_HPP
