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

#ifndef STEADE_SOBOL_HPP
#define STEADE_SOBOL_HPP

#include "steade/common.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace steade {

// Sobol' low-discrepancy sequence (Joe-Kuo direction numbers, gray-code
// order, first point at the origin), with optional hash-based nested
// uniform (Owen) scrambling.
class SobolSequence {
 public:
  static constexpr std::size_t kMaxDimension = 64;
  static constexpr int kBits = 32;

  explicit SobolSequence(std::size_t dim);

  std::size_t dimension() const { return directions_.size(); }

  // 32-bit integer coordinate of point `index` in dimension `d`.
  std::uint32_t integer_point(std::uint32_t index, std::size_t d) const;

  // Unscrambled point in [0,1)^dim.
  Vector point(std::uint32_t index) const;

 private:
  std::vector<std::array<std::uint32_t, kBits>> directions_;
};

// Nested uniform scramble of a 32-bit coordinate: bit b is flipped by a hash
// of the seed, the dimension and all more significant input bits.
std::uint32_t owen_scramble(std::uint32_t value, std::uint64_t seed, std::size_t dim);

// n x dim Owen-scrambled Sobol points strictly inside (0,1).
PointSet scrambled_sobol(std::size_t n, std::size_t dim, std::uint64_t seed);

// n x dim standard normals: scrambled Sobol points through the inverse
// normal CDF. n must be a power of two.
PointSet sobol_normal(std::size_t n, std::size_t dim, std::uint64_t seed);

// Fixed base sample for sample-average approximation of batch acquisitions.
class QmcSampler {
 public:
  QmcSampler(std::size_t q, std::size_t n, std::uint64_t seed);

  std::size_t dimension() const { return q_; }
  std::size_t samples() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  // Column-major copy of sobol_normal(n, q, seed).
  const Eigen::MatrixXd& normals() const { return normals_; }

 private:
  std::size_t q_;
  std::size_t n_;
  std::uint64_t seed_;
  Eigen::MatrixXd normals_;
};

}  // namespace steade

#endif  // STEADE_SOBOL_HPP
