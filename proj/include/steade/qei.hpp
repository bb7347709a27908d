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

#ifndef STEADE_QEI_HPP
#define STEADE_QEI_HPP

#include "steade/common.hpp"
#include "steade/gp.hpp"
#include "steade/rng.hpp"
#include "steade/sobol.hpp"

#include <Eigen/Core>

#include <vector>

namespace steade {

// Lower Cholesky factor of a symmetric positive semi-definite matrix.
// Pivots at or below a relative threshold zero their column instead of
// failing, so rank-deficient covariances (duplicated points) factor exactly.
// Throws std::runtime_error on non-finite input.
Eigen::MatrixXd psd_cholesky(const Eigen::MatrixXd& cov);

// Batch expected improvement for minimization,
//   E[max(0, best - min_j Y_j)],  Y ~ posterior at the batch rows,
// estimated on the sampler's fixed normals (Y = mean + L z). The sampler must
// have at least as many columns as the batch has rows; extra columns are
// ignored, so nested batches share their samples.
double qei(const GpModel& model, const PointSet& batch, double best, const QmcSampler& sampler,
           Exec exec = Exec::parallel);

struct QeiOptions {
  std::size_t random_starts = 20;
  std::size_t incumbent_starts = 4;
  std::size_t iterations = 30;
  std::size_t samples = 4096;
  double initial_step = 0.1;
  Exec exec = Exec::parallel;
};

struct QeiSearchResult {
  PointSet batch;
  double value = 0.0;
  std::vector<double> start_values;  // qEI of every starting batch, in start order
};

// Multi-start (1+1) pattern search over the joint q*D batch. Every start owns
// a random stream derived from one draw of rng, so serial and parallel
// execution return the same batch.
QeiSearchResult optimize_qei_detailed(const GpModel& model, std::size_t q, Rng& rng,
                                      const QeiOptions& options = {});

PointSet optimize_qei(const GpModel& model, std::size_t q, Rng& rng,
                      const QeiOptions& options = {});

}  // namespace steade

#endif  // STEADE_QEI_HPP
