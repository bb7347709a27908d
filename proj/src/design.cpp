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

#include "steade/design.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace steade {

PointSet slhd(std::size_t n, std::size_t dim, Rng& rng) {
  if (n == 0 || dim == 0) throw std::invalid_argument("slhd needs n >= 1 and dim >= 1");
  const std::size_t half = n / 2;
  const double inv_n = 1.0 / static_cast<double>(n);
  PointSet points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));

  std::vector<std::size_t> pairs(half);
  for (std::size_t j = 0; j < dim; ++j) {
    std::iota(pairs.begin(), pairs.end(), std::size_t{1});
    for (std::size_t k = half; k > 1; --k) std::swap(pairs[k - 1], pairs[rng.index(k)]);
    for (std::size_t r = 0; r < half; ++r) {
      std::size_t low = pairs[r];
      std::size_t high = n + 1 - low;
      if (rng.uniform() < 0.5) std::swap(low, high);
      points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          (static_cast<double>(low) - 0.5) * inv_n;
      points(static_cast<Eigen::Index>(n - 1 - r), static_cast<Eigen::Index>(j)) =
          (static_cast<double>(high) - 0.5) * inv_n;
    }
    if (n % 2 == 1) points(static_cast<Eigen::Index>(half), static_cast<Eigen::Index>(j)) = 0.5;
  }

  // Shuffle the order of mirror pairs (and the orientation inside each pair)
  // so that rows carry no column-correlated ordering.
  std::vector<std::size_t> order(half);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = half; k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
  PointSet shuffled = points;
  for (std::size_t r = 0; r < half; ++r) {
    auto top = static_cast<Eigen::Index>(order[r]);
    auto bottom = static_cast<Eigen::Index>(n - 1 - order[r]);
    if (rng.uniform() < 0.5) std::swap(top, bottom);
    shuffled.row(static_cast<Eigen::Index>(r)) = points.row(top);
    shuffled.row(static_cast<Eigen::Index>(n - 1 - r)) = points.row(bottom);
  }
  return shuffled;
}

}  // namespace steade
