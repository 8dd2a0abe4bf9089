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

#include "tng/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tng {

std::uint32_t ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

TernaryMessage ternary_encode(const Vec& v, RngStream& stream) {
  check_finite(v, "ternary_encode input");
  TernaryMessage msg;
  msg.scale = inf_norm(v);
  msg.trits.assign(v.size(), 0);
  if (msg.scale == 0.0) return msg;
  for (std::size_t d = 0; d < v.size(); ++d) {
    const double p = std::fabs(v[d]) / msg.scale;
    if (stream.uniform() < p) {
      msg.trits[d] = v[d] > 0.0 ? 1 : -1;
    }
  }
  return msg;
}

Vec ternary_decode(const TernaryMessage& msg) {
  Vec r(msg.trits.size());
  for (std::size_t d = 0; d < r.size(); ++d) {
    r[d] = msg.scale * static_cast<double>(msg.trits[d]);
  }
  return r;
}

double ternary_variance(const Vec& v) {
  check_finite(v, "ternary_variance input");
  return inf_norm(v) * l1_norm(v) - l2_norm_sq(v);
}

bool ternary_optimality_check(const Vec& v, std::vector<double> r_grid) {
  const double r_star = inf_norm(v);
  for (double r : r_grid) {
    if (r < r_star) {
      throw std::invalid_argument(
          "ternary_optimality_check: grid point below max|v_d| is infeasible");
    }
  }
  std::sort(r_grid.begin(), r_grid.end());
  const double l1 = l1_norm(v);
  const double l2sq = l2_norm_sq(v);
  const double best = r_star * l1 - l2sq;
  double prev = best;
  for (double r : r_grid) {
    const double var = r * l1 - l2sq;
    if (var < prev || var < best) return false;
    prev = var;
  }
  return true;
}

QuantMessage quant_encode(const Vec& v, int levels, RngStream& stream) {
  if (levels < 1 || levels > 65535) {
    throw std::invalid_argument("quant levels must lie in [1, 65535]");
  }
  check_finite(v, "quant_encode input");
  QuantMessage msg;
  msg.levels = levels;
  msg.scale = l2_norm(v);
  msg.signs.assign(v.size(), 1);
  msg.level_idx.assign(v.size(), 0);
  if (msg.scale == 0.0) return msg;
  for (std::size_t d = 0; d < v.size(); ++d) {
    const double x = std::fabs(v[d]) * levels / msg.scale;  // in [0, levels]
    auto level = static_cast<std::uint32_t>(std::floor(x));
    const double frac = x - std::floor(x);
    if (stream.uniform() < frac) ++level;
    if (level == 0) {
      msg.signs[d] = 1;  // canonical sign at the zero level
      msg.level_idx[d] = 0;
    } else {
      msg.signs[d] = v[d] < 0.0 ? -1 : 1;
      msg.level_idx[d] = static_cast<std::uint16_t>(level);
    }
  }
  return msg;
}

Vec quant_decode(const QuantMessage& msg) {
  Vec r(msg.level_idx.size());
  for (std::size_t d = 0; d < r.size(); ++d) {
    r[d] = msg.scale * static_cast<double>(msg.signs[d]) *
           (static_cast<double>(msg.level_idx[d]) /
            static_cast<double>(msg.levels));
  }
  return r;
}

SparseMessage sparse_encode(const Vec& v, double keep, RngStream& stream) {
  if (!(keep > 0.0) || keep > static_cast<double>(v.size())) {
    throw std::invalid_argument("sparse keep must satisfy 0 < keep <= dim");
  }
  check_finite(v, "sparse_encode input");
  SparseMessage msg;
  msg.dim = static_cast<std::uint32_t>(v.size());
  const double l1 = l1_norm(v);
  if (l1 == 0.0) return msg;
  for (std::size_t d = 0; d < v.size(); ++d) {
    const double p = std::min(1.0, keep * std::fabs(v[d]) / l1);
    if (p > 0.0 && stream.uniform() < p) {
      msg.entries.emplace_back(static_cast<std::uint32_t>(d), v[d] / p);
    }
  }
  return msg;
}

Vec sparse_decode(const SparseMessage& msg) {
  Vec r(msg.dim, 0.0);
  for (const auto& [idx, val] : msg.entries) r[idx] = val;
  return r;
}

CompressedMessage encode(const CodecConfig& codec, const Vec& v,
                         RngStream& stream) {
  switch (codec.type) {
    case CodecType::kTernary:
      return ternary_encode(v, stream);
    case CodecType::kQuant:
      return quant_encode(v, codec.levels, stream);
    case CodecType::kSparse:
      return sparse_encode(v, codec.keep, stream);
    case CodecType::kNone:
      check_finite(v, "dense encode input");
      return DenseMessage{v};
  }
  throw std::logic_error("unreachable codec type");
}

Vec decode(const CompressedMessage& msg) {
  return std::visit(
      [](const auto& m) -> Vec {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TernaryMessage>) {
          return ternary_decode(m);
        } else if constexpr (std::is_same_v<T, QuantMessage>) {
          return quant_decode(m);
        } else if constexpr (std::is_same_v<T, SparseMessage>) {
          return sparse_decode(m);
        } else {
          return m.values;
        }
      },
      msg);
}

BitCost full_precision_bits(std::size_t dim) {
  return 16ULL * static_cast<BitCost>(dim);
}

BitCost bit_cost(const CompressedMessage& msg) {
  return std::visit(
      [](const auto& m) -> BitCost {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TernaryMessage>) {
          const std::uint64_t dim = m.trits.size();
          std::uint64_t nnz = 0;
          for (auto t : m.trits) nnz += (t != 0);
          const std::uint64_t dense = 2 * dim;
          const std::uint64_t sparse = nnz * (ceil_log2(dim) + 1);
          return 16 + std::min(dense, sparse);
        } else if constexpr (std::is_same_v<T, QuantMessage>) {
          const std::uint64_t dim = m.level_idx.size();
          return 16 + dim * (1 + ceil_log2(
                                     static_cast<std::uint64_t>(m.levels) + 1));
        } else if constexpr (std::is_same_v<T, SparseMessage>) {
          const std::uint64_t nnz = m.entries.size();
          return nnz * 16 + nnz * ceil_log2(m.dim);
        } else {
          return full_precision_bits(m.values.size());
        }
      },
      msg);
}

double estimate_cq(const CodecConfig& codec, const Vec& v, int trials,
                   RngStream& stream) {
  if (trials < 1) throw std::invalid_argument("estimate_cq needs trials >= 1");
  const double denom = l2_norm_sq(v);
  if (denom == 0.0) {
    throw std::invalid_argument("estimate_cq undefined for the zero vector");
  }
  double acc = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Vec back = decode(encode(codec, v, stream));
    acc += l2_norm_sq(sub(back, v));
  }
  return acc / (static_cast<double>(trials) * denom);
}

// --- serialization ----------------------------------------------------------

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back((bits >> (8 * i)) & 0xFF);
}

struct Reader {
  const std::vector<std::uint8_t>& buf;
  std::size_t pos = 0;

  std::uint8_t u8() {
    if (pos + 1 > buf.size()) throw std::runtime_error("truncated message");
    return buf[pos++];
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(u8()) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

constexpr std::uint8_t kTagDense = 0;
constexpr std::uint8_t kTagTernary = 1;
constexpr std::uint8_t kTagQuant = 2;
constexpr std::uint8_t kTagSparse = 3;

}  // namespace

std::vector<std::uint8_t> serialize(const CompressedMessage& msg) {
  std::vector<std::uint8_t> body;
  std::visit(
      [&body](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TernaryMessage>) {
          body.push_back(kTagTernary);
          put_u32(body, static_cast<std::uint32_t>(m.trits.size()));
          put_f64(body, m.scale);
          for (auto t : m.trits) body.push_back(static_cast<std::uint8_t>(t));
        } else if constexpr (std::is_same_v<T, QuantMessage>) {
          body.push_back(kTagQuant);
          put_u32(body, static_cast<std::uint32_t>(m.level_idx.size()));
          put_f64(body, m.scale);
          put_u32(body, static_cast<std::uint32_t>(m.levels));
          for (std::size_t d = 0; d < m.level_idx.size(); ++d) {
            body.push_back(static_cast<std::uint8_t>(m.signs[d]));
            body.push_back(m.level_idx[d] & 0xFF);
            body.push_back((m.level_idx[d] >> 8) & 0xFF);
          }
        } else if constexpr (std::is_same_v<T, SparseMessage>) {
          body.push_back(kTagSparse);
          put_u32(body, m.dim);
          put_f64(body, 0.0);
          put_u32(body, static_cast<std::uint32_t>(m.entries.size()));
          for (const auto& [idx, val] : m.entries) {
            put_u32(body, idx);
            put_f64(body, val);
          }
        } else {
          body.push_back(kTagDense);
          put_u32(body, static_cast<std::uint32_t>(m.values.size()));
          put_f64(body, 0.0);
          for (double v : m.values) put_f64(body, v);
        }
      },
      msg);
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

CompressedMessage deserialize(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  const std::uint32_t len = r.u32();
  if (bytes.size() != 4u + len) throw std::runtime_error("bad length prefix");
  const std::uint8_t tag = r.u8();
  const std::uint32_t dim = r.u32();
  const double scale = r.f64();
  switch (tag) {
    case kTagTernary: {
      TernaryMessage m;
      m.scale = scale;
      m.trits.resize(dim);
      for (std::uint32_t d = 0; d < dim; ++d) {
        m.trits[d] = static_cast<std::int8_t>(r.u8());
      }
      return m;
    }
    case kTagQuant: {
      QuantMessage m;
      m.scale = scale;
      m.levels = static_cast<std::int32_t>(r.u32());
      m.signs.resize(dim);
      m.level_idx.resize(dim);
      for (std::uint32_t d = 0; d < dim; ++d) {
        m.signs[d] = static_cast<std::int8_t>(r.u8());
        std::uint16_t lo = r.u8();
        std::uint16_t hi = r.u8();
        m.level_idx[d] = static_cast<std::uint16_t>(lo | (hi << 8));
      }
      return m;
    }
    case kTagSparse: {
      SparseMessage m;
      m.dim = dim;
      const std::uint32_t nnz = r.u32();
      m.entries.reserve(nnz);
      for (std::uint32_t i = 0; i < nnz; ++i) {
        const std::uint32_t idx = r.u32();
        const double val = r.f64();
        m.entries.emplace_back(idx, val);
      }
      return m;
    }
    case kTagDense: {
      DenseMessage m;
      m.values.resize(dim);
      for (std::uint32_t d = 0; d < dim; ++d) m.values[d] = r.f64();
      return m;
    }
    default:
      throw std::runtime_error("unknown message tag");
  }
}

}  // namespace tng
