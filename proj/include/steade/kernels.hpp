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

#ifndef STEADE_KERNELS_HPP
#define STEADE_KERNELS_HPP

// Data-parallel inner loops. Every kernel has a serial reference version and
// an OpenMP version; both produce bit-identical results because the per-item
// arithmetic is shared and reductions are finished serially in index order.

#include "steade/common.hpp"

#include <Eigen/Core>

#include <span>

namespace steade::kernels {

// out[c] = sum_i weights[i] * ||q_c - center_i||^3 + tail . [q_c; 1]
void rbf_eval_serial(const PointSet& centers, const Vector& weights, const Vector& tail,
                     const PointSet& queries, std::span<double> out);
void rbf_eval_parallel(const PointSet& centers, const Vector& weights, const Vector& tail,
                       const PointSet& queries, std::span<double> out);

// out[c] = min_r ||q_c - ref_r||^2 (infinity when refs is empty).
void min_sq_distance_serial(const PointSet& queries, const PointSet& refs, std::span<double> out);
void min_sq_distance_parallel(const PointSet& queries, const PointSet& refs, std::span<double> out);

// Matern-5/2 cross-covariance with ARD inverse lengthscales.
void matern52_cross_serial(const PointSet& a, const PointSet& b, const Vector& inv_lengthscale,
                           double signal_var, Eigen::MatrixXd& out);
void matern52_cross_parallel(const PointSet& a, const PointSet& b, const Vector& inv_lengthscale,
                             double signal_var, Eigen::MatrixXd& out);

// Sample average of max(0, best - min_j (mean + L z)_j) over the rows z of
// normals (column-major, only the first mean.size() columns are read). chol
// is lower triangular.
double qei_mc_serial(const Eigen::MatrixXd& normals, const Vector& mean,
                     const Eigen::MatrixXd& chol, double best);
double qei_mc_parallel(const Eigen::MatrixXd& normals, const Vector& mean,
                       const Eigen::MatrixXd& chol, double best);

}  // namespace steade::kernels

#endif  // STEADE_KERNELS_HPP
