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

#ifndef STEADE_COMMON_HPP
#define STEADE_COMMON_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>

namespace steade {

using Vector = Eigen::VectorXd;

// One point per row. Every optimizer-facing point lives in the unit cube.
using PointSet = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Selects the serial reference kernels or their OpenMP counterparts.
enum class Exec { serial, parallel };

// Squared Euclidean distance between two row-like expressions.
template <typename A, typename B>
inline double squared_distance(const A& a, const B& b) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

// Clamps every coordinate into [0, 1].
inline void clip_to_cube(Eigen::Ref<Vector> x) { x = x.cwiseMax(0.0).cwiseMin(1.0); }

}  // namespace steade

#endif  // STEADE_COMMON_HPP
