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

#ifndef TNG_CODEC_HPP
#define TNG_CODEC_HPP

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "tng/rng.hpp"
#include "tng/vec.hpp"

namespace tng {

// Ternary code: each coordinate is scale * {-1, 0, +1}. scale == 0 implies
// every trit is 0 (the all-zero input).
struct TernaryMessage {
  double scale = 0.0;
  std::vector<std::int8_t> trits;
};

// Stochastic quantization against the l2 norm with `levels` uniform steps.
// A zero level index carries the canonical + sign.
struct QuantMessage {
  double scale = 0.0;
  std::int32_t levels = 1;
  std::vector<std::int8_t> signs;
  std::vector<std::uint16_t> level_idx;
};

// Magnitude-proportional sparsification; indices strictly increasing,
// values nonzero.
struct SparseMessage {
  std::uint32_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;
};

// Uncompressed payload (the "none" codec); costs 16 bits per element.
struct DenseMessage {
  Vec values;
};

using CompressedMessage =
    std::variant<TernaryMessage, QuantMessage, SparseMessage, DenseMessage>;

using BitCost = std::uint64_t;

enum class CodecType { kNone, kTernary, kQuant, kSparse };

struct CodecConfig {
  CodecType type = CodecType::kTernary;
  int levels = 1;      // quant
  double keep = 1.0;   // sparse: expected kept coordinates
};

// --- ternary ---------------------------------------------------------------

// scale = max_d |v_d|; trit_d = sign(v_d) with probability |v_d| / scale,
// else 0. Unbiased: E[decode] = v componentwise.
TernaryMessage ternary_encode(const Vec& v, RngStream& stream);
Vec ternary_decode(const TernaryMessage& msg);

// Closed form E||decode(encode(v)) - v||^2 = R*||v||_1 - ||v||_2^2 with
// R = max_d |v_d|.
double ternary_variance(const Vec& v);

// Brute-force check that the variance r*||v||_1 - ||v||_2^2 is nondecreasing
// over the sorted grid and minimized at r = max_d |v_d|. Every grid point
// must be a feasible scale (r >= max_d |v_d|).
bool ternary_optimality_check(const Vec& v, std::vector<double> r_grid);

// --- quantization ----------------------------------------------------------

QuantMessage quant_encode(const Vec& v, int levels, RngStream& stream);
Vec quant_decode(const QuantMessage& msg);

// --- sparsification --------------------------------------------------------

// Coordinate d kept with probability min(1, keep*|v_d| / ||v||_1) and stored
// as v_d / p_d; the zero vector yields an empty message.
SparseMessage sparse_encode(const Vec& v, double keep, RngStream& stream);
Vec sparse_decode(const SparseMessage& msg);

// --- generic dispatch ------------------------------------------------------

CompressedMessage encode(const CodecConfig& codec, const Vec& v,
                         RngStream& stream);
Vec decode(const CompressedMessage& msg);

// Exact cost model, in bits:
//   scalars (scales)       16 each
//   ternary                16 + min(2*D, nnz*(ceil_log2(D) + 1))
//   quantized              16 + D*(1 + ceil_log2(levels + 1))
//   sparse                 nnz*16 + nnz*ceil_log2(D)
//   dense (uncompressed)   16*D
BitCost bit_cost(const CompressedMessage& msg);

// Cost of one full-precision vector transfer under the same model.
BitCost full_precision_bits(std::size_t dim);

std::uint32_t ceil_log2(std::uint64_t n);

// Empirical relative second-moment error of a codec on v:
// mean over trials of ||decode(encode(v)) - v||^2 / ||v||^2.
double estimate_cq(const CodecConfig& codec, const Vec& v, int trials,
                   RngStream& stream);

// Length-prefixed binary layout: u32 total payload bytes, then tag byte,
// dim as u32, scale as f64, then the per-type payload. Little endian.
std::vector<std::uint8_t> serialize(const CompressedMessage& msg);
CompressedMessage deserialize(const std::vector<std::uint8_t>& bytes);

}  // namespace tng

#endif  // TNG_CODEC_HPP
