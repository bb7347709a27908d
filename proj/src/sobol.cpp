/*
 * Copyright 2026 The STEADE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "steade/sobol.hpp"

#include "steade/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace steade {
namespace {

struct Primitive {
  int degree;
  std::uint32_t coefficients;
  std::array<std::uint32_t, 9> initial;
};

// Joe & Kuo (2008) direction numbers for dimensions 2..64.
constexpr Primitive kPrimitives[] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
    {7, 7, {1, 1, 3, 13, 7, 35, 63}},
    {7, 8, {1, 3, 5, 9, 1, 25, 53}},
    {7, 14, {1, 3, 1, 13, 9, 35, 107}},
    {7, 19, {1, 3, 1, 5, 27, 61, 31}},
    {7, 21, {1, 1, 5, 11, 19, 41, 61}},
    {7, 28, {1, 3, 5, 3, 3, 13, 69}},
    {7, 31, {1, 1, 7, 13, 1, 19, 1}},
    {7, 32, {1, 3, 7, 5, 13, 19, 59}},
    {7, 37, {1, 1, 3, 9, 25, 29, 41}},
    {7, 41, {1, 3, 5, 13, 23, 1, 55}},
    {7, 42, {1, 3, 7, 3, 13, 59, 17}},
    {7, 50, {1, 3, 1, 3, 5, 53, 69}},
    {7, 55, {1, 1, 5, 5, 23, 33, 13}},
    {7, 56, {1, 1, 7, 7, 1, 61, 123}},
    {7, 59, {1, 1, 7, 9, 13, 61, 49}},
    {7, 62, {1, 3, 3, 5, 3, 55, 33}},
    {8, 14, {1, 3, 1, 15, 31, 13, 49, 245}},
    {8, 21, {1, 3, 5, 15, 31, 59, 63, 97}},
    {8, 22, {1, 3, 1, 11, 11, 11, 77, 249}},
    {8, 38, {1, 3, 1, 11, 27, 43, 71, 9}},
    {8, 47, {1, 1, 7, 15, 21, 11, 81, 45}},
    {8, 49, {1, 3, 7, 3, 25, 31, 65, 79}},
    {8, 50, {1, 3, 1, 1, 19, 11, 3, 205}},
    {8, 52, {1, 1, 5, 9, 19, 21, 29, 157}},
    {8, 56, {1, 3, 7, 11, 1, 33, 89, 185}},
    {8, 67, {1, 3, 3, 3, 15, 9, 79, 71}},
    {8, 70, {1, 3, 7, 11, 15, 39, 119, 27}},
    {8, 84, {1, 1, 3, 1, 11, 31, 97, 225}},
    {8, 97, {1, 1, 1, 3, 23, 43, 57, 177}},
    {8, 103, {1, 3, 7, 7, 17, 17, 37, 71}},
    {8, 115, {1, 3, 1, 5, 27, 63, 123, 213}},
    {8, 122, {1, 1, 3, 5, 11, 43, 53, 133}},
    {9, 8, {1, 3, 5, 5, 29, 17, 47, 173, 479}},
    {9, 13, {1, 3, 3, 11, 3, 1, 109, 9, 69}},
    {9, 16, {1, 1, 1, 5, 17, 39, 23, 5, 343}},
    {9, 22, {1, 3, 1, 5, 25, 15, 31, 103, 499}},
    {9, 25, {1, 1, 1, 11, 11, 17, 63, 105, 183}},
    {9, 44, {1, 1, 5, 11, 9, 29, 97, 231, 363}},
    {9, 47, {1, 1, 5, 15, 19, 45, 41, 7, 383}},
    {9, 52, {1, 3, 7, 7, 31, 19, 83, 137, 221}},
    {9, 55, {1, 1, 1, 3, 23, 15, 111, 223, 83}},
    {9, 59, {1, 1, 5, 13, 31, 15, 55, 25, 161}},
    {9, 62, {1, 1, 3, 13, 25, 47, 39, 87, 257}},
};

}  // namespace

SobolSequence::SobolSequence(std::size_t dim) {
  if (dim == 0 || dim > kMaxDimension) {
    throw std::invalid_argument("SobolSequence: dimension must be in [1, 64]");
  }
  directions_.resize(dim);
  for (int b = 0; b < kBits; ++b) directions_[0][b] = 1u << (kBits - 1 - b);
  for (std::size_t d = 1; d < dim; ++d) {
    const auto& prim = kPrimitives[d - 1];
    const int s = prim.degree;
    auto& v = directions_[d];
    for (int b = 0; b < s && b < kBits; ++b) v[b] = prim.initial[b] << (kBits - 1 - b);
    for (int b = s; b < kBits; ++b) {
      std::uint32_t value = v[b - s] ^ (v[b - s] >> s);
      for (int k = 1; k < s; ++k) {
        if ((prim.coefficients >> (s - 1 - k)) & 1u) value ^= v[b - k];
      }
      v[b] = value;
    }
  }
}

std::uint32_t SobolSequence::integer_point(std::uint32_t index, std::size_t d) const {
  const std::uint32_t gray = index ^ (index >> 1);
  std::uint32_t x = 0;
  for (int b = 0; b < kBits; ++b) {
    if ((gray >> b) & 1u) x ^= directions_[d][b];
  }
  return x;
}

Vector SobolSequence::point(std::uint32_t index) const {
  Vector x(static_cast<Eigen::Index>(dimension()));
  for (std::size_t d = 0; d < dimension(); ++d) {
    x[static_cast<Eigen::Index>(d)] = integer_point(index, d) * 0x1.0p-32;
  }
  return x;
}

std::uint32_t owen_scramble(std::uint32_t value, std::uint64_t seed, std::size_t dim) {
  const std::uint64_t key = derive_seed(seed, {static_cast<std::uint64_t>(dim)});
  std::uint32_t out = value;
  for (int b = SobolSequence::kBits - 1; b >= 0; --b) {
    // Prefix = the input bits above b, tagged with its length.
    const std::uint64_t prefix = b == 31 ? 0u : static_cast<std::uint64_t>(value >> (b + 1));
    const std::uint64_t h = mix64(key ^ mix64((prefix << 6) | static_cast<std::uint64_t>(b)));
    out ^= static_cast<std::uint32_t>(h & 1u) << b;
  }
  return out;
}

PointSet scrambled_sobol(std::size_t n, std::size_t dim, std::uint64_t seed) {
  const SobolSequence sequence(dim);
  PointSet out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      const std::uint32_t raw = sequence.integer_point(static_cast<std::uint32_t>(i), d);
      const std::uint32_t mixed = owen_scramble(raw, seed, d);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          (static_cast<double>(mixed) + 0.5) * 0x1.0p-32;
    }
  }
  return out;
}

PointSet sobol_normal(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("sobol_normal: sample count must be a power of two");
  }
  PointSet u = scrambled_sobol(n, dim, seed);
  // Phi^{-1}(p) = -sqrt(2) * erfc^{-1}(2p)
  return u.unaryExpr([](double p) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p); });
}

QmcSampler::QmcSampler(std::size_t q, std::size_t n, std::uint64_t seed)
    : q_(q), n_(n), seed_(seed) {
  if (q == 0) throw std::invalid_argument("QmcSampler: dimension must be positive");
  normals_ = sobol_normal(n, q, seed);
}

}  // namespace steade
