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

#include "tng/codec.hpp"

using namespace tng;

namespace {

// Componentwise Monte Carlo mean of decode(encode(v)) with a 3-standard-error
// band around v.
void check_unbiased(const CodecConfig& codec, const Vec& v, int trials,
                    RngStream& stream) {
  const std::size_t dim = v.size();
  Vec sum(dim, 0.0);
  Vec sumsq(dim, 0.0);
  for (int t = 0; t < trials; ++t) {
    const Vec back = decode(encode(codec, v, stream));
    for (std::size_t d = 0; d < dim; ++d) {
      sum[d] += back[d];
      sumsq[d] += back[d] * back[d];
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    const double mean = sum[d] / trials;
    const double var =
        std::max(0.0, sumsq[d] / trials - mean * mean) / trials;
    const double band = 3.0 * std::sqrt(var) + 1e-12;
    CHECK(std::fabs(mean - v[d]) <= band);
  }
}

}  // namespace

TEST_CASE("ternary encode forced cases") {
  RngStream s = derive_stream(1, 0, 0, purpose::kTest);
  const TernaryMessage all_ones = ternary_encode({1.0, 1.0, 1.0}, s);
  CHECK(all_ones.scale == 1.0);
  CHECK(all_ones.trits == std::vector<std::int8_t>{1, 1, 1});

  const TernaryMessage zero = ternary_encode({0.0, 0.0}, s);
  CHECK(zero.scale == 0.0);
  CHECK(zero.trits == std::vector<std::int8_t>{0, 0});
}

TEST_CASE("ternary decode definition") {
  CHECK(ternary_decode({2.0, {1, 0, -1}}) == Vec{2.0, 0.0, -2.0});
  CHECK(ternary_decode({0.0, {0, 0}}) == Vec{0.0, 0.0});
}

TEST_CASE("ternary decode support") {
  RngStream s = derive_stream(2, 0, 0, purpose::kTest);
  const Vec v{0.4, -0.9, 0.0, 0.2};
  for (int t = 0; t < 200; ++t) {
    const TernaryMessage msg = ternary_encode(v, s);
    for (double x : ternary_decode(msg)) {
      const bool ok = x == 0.0 || x == msg.scale || x == -msg.scale;
      CHECK(ok);
    }
  }
}

TEST_CASE("ternary unbiasedness") {
  RngStream s = derive_stream(3, 0, 0, purpose::kTest);
  check_unbiased({CodecType::kTernary, 1, 1.0}, {0.5, -1.0, 0.0}, 100000, s);
}

TEST_CASE("ternary variance closed form") {
  CHECK(ternary_variance({1.0, 1.0}) == 0.0);
  CHECK(ternary_variance({0.5, -1.0, 0.0}) == doctest::Approx(0.25));
  CHECK(ternary_variance({0.0}) == 0.0);

  // Monte Carlo confirmation on the middle vector.
  RngStream s = derive_stream(4, 0, 0, purpose::kTest);
  const Vec v{0.5, -1.0, 0.0};
  const int trials = 100000;
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    acc += l2_norm_sq(sub(ternary_decode(ternary_encode(v, s)), v));
  }
  CHECK(acc / trials == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("ternary scale optimality oracle") {
  CHECK(ternary_optimality_check({0.5, -1.0}, {1.0, 1.5, 2.0, 4.0}));
  CHECK(ternary_optimality_check({1.0, 1.0}, {1.0, 2.0}));
  CHECK_THROWS_AS(ternary_optimality_check({0.5, -1.0}, {0.5, 1.0}),
                  std::invalid_argument);

  RngStream s = derive_stream(5, 0, 0, purpose::kTest);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + s.next_u64() % 7;  // 2..8
    const Vec v = gaussian(s, d);
    const double r0 = inf_norm(v);
    std::vector<double> grid;
    for (int i = 0; i < 8; ++i) grid.push_back(r0 * (1.0 + 0.5 * i));
    CHECK(ternary_optimality_check(v, grid));
  }
}

TEST_CASE("quantization forced cases and unbiasedness") {
  RngStream s = derive_stream(6, 0, 0, purpose::kTest);
  CHECK(quant_decode(quant_encode({0.0, 0.0}, 4, s)) == Vec{0.0, 0.0});
  CHECK(quant_decode(quant_encode({5.0, 0.0}, 1, s)) == Vec{5.0, 0.0});

  const Vec v{3.0, 4.0};
  for (int t = 0; t < 200; ++t) {
    for (double x : quant_decode(quant_encode(v, 1, s))) {
      const bool ok = x == 0.0 || std::fabs(x) == 5.0;
      CHECK(ok);
    }
  }
  check_unbiased({CodecType::kQuant, 1, 1.0}, v, 100000, s);
}

TEST_CASE("sparsification forced cases and unbiasedness") {
  RngStream s = derive_stream(7, 0, 0, purpose::kTest);
  const SparseMessage one = sparse_encode({1.0, 0.0, 0.0}, 1.0, s);
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].first == 0);
  CHECK(one.entries[0].second == 1.0);

  const SparseMessage both = sparse_encode({1.0, 1.0}, 2.0, s);
  REQUIRE(both.entries.size() == 2);
  CHECK(both.entries[0].second == 1.0);
  CHECK(both.entries[1].second == 1.0);

  const SparseMessage empty = sparse_encode({0.0, 0.0}, 1.0, s);
  CHECK(empty.entries.empty());
  CHECK(sparse_decode(empty) == Vec{0.0, 0.0});

  check_unbiased({CodecType::kSparse, 1, 1.0}, {0.5, -1.0, 0.25}, 100000, s);
  CHECK_THROWS_AS(sparse_encode({1.0, 2.0}, 3.0, s), std::invalid_argument);
}

TEST_CASE("sparse indices are sorted and values nonzero") {
  RngStream s = derive_stream(8, 0, 0, purpose::kTest);
  const Vec v = gaussian(s, 64);
  for (int t = 0; t < 100; ++t) {
    const SparseMessage msg = sparse_encode(v, 8.0, s);
    for (std::size_t i = 0; i < msg.entries.size(); ++i) {
      CHECK(msg.entries[i].second != 0.0);
      if (i > 0) CHECK(msg.entries[i].first > msg.entries[i - 1].first);
    }
  }
}

TEST_CASE("bit cost model") {
  TernaryMessage t512{1.0, std::vector<std::int8_t>(512, 0)};
  for (int i = 0; i < 300; ++i) t512.trits[i] = 1;
  CHECK(bit_cost(t512) == 1040);  // 16 + min(1024, 300 * 10)

  CHECK(full_precision_bits(512) == 8192);
  // One 16-bit reference broadcast equals eight dense ternary payloads.
  TernaryMessage dense512{1.0, std::vector<std::int8_t>(512, 1)};
  CHECK(full_precision_bits(512) == 8 * (bit_cost(dense512) - 16));

  TernaryMessage t8{1.0, {1, 0, 0, 0, 0, 0, 0, 0}};
  CHECK(bit_cost(t8) == 20);  // 16 + min(16, 1 * 4)

  QuantMessage q;
  q.scale = 1.0;
  q.levels = 1;
  q.signs.assign(512, 1);
  q.level_idx.assign(512, 0);
  CHECK(bit_cost(q) == 16 + 512 * 2);

  SparseMessage sp;
  sp.dim = 512;
  sp.entries = {{3, 1.5}, {17, -2.0}};
  CHECK(bit_cost(sp) == 2 * 16 + 2 * 9);

  DenseMessage d{Vec(512, 0.5)};
  CHECK(bit_cost(d) == 8192);
}

TEST_CASE("bit cost is a pure function of the message") {
  RngStream s = derive_stream(9, 0, 0, purpose::kTest);
  const Vec v = gaussian(s, 33);
  const CompressedMessage msg = encode({CodecType::kTernary, 1, 1.0}, v, s);
  CHECK(bit_cost(msg) == bit_cost(msg));
  const CompressedMessage copy = msg;
  CHECK(bit_cost(copy) == bit_cost(msg));
}

TEST_CASE("estimate_cq") {
  RngStream s = derive_stream(10, 0, 0, purpose::kTest);
  CHECK(estimate_cq({CodecType::kTernary, 1, 1.0}, {1.0, 1.0, 1.0}, 100, s) ==
        0.0);
  CHECK(estimate_cq({CodecType::kTernary, 1, 1.0}, {0.5, -1.0, 0.0}, 100000,
                    s) == doctest::Approx(0.2).epsilon(0.02));

  const Vec v = gaussian(s, 32);
  const double coarse = estimate_cq({CodecType::kQuant, 1, 1.0}, v, 2000, s);
  const double fine = estimate_cq({CodecType::kQuant, 64, 1.0}, v, 2000, s);
  CHECK(fine < coarse);
  CHECK_THROWS_AS(estimate_cq({CodecType::kTernary, 1, 1.0}, {0.0}, 10, s),
                  std::invalid_argument);
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(512) == 9);
  CHECK(ceil_log2(513) == 10);
}

TEST_CASE("serialization round trip") {
  RngStream s = derive_stream(11, 0, 0, purpose::kTest);
  const Vec v = gaussian(s, 19);
  const CodecConfig codecs[] = {{CodecType::kTernary, 1, 1.0},
                                {CodecType::kQuant, 3, 1.0},
                                {CodecType::kSparse, 1, 4.0},
                                {CodecType::kNone, 1, 1.0}};
  for (const auto& c : codecs) {
    const CompressedMessage msg = encode(c, v, s);
    const CompressedMessage back = deserialize(serialize(msg));
    CHECK(decode(back) == decode(msg));
    CHECK(bit_cost(back) == bit_cost(msg));
  }
}
