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

#ifndef STEADE_RBF_HPP
#define STEADE_RBF_HPP

#include "steade/common.hpp"
#include "steade/rng.hpp"

#include <span>
#include <stdexcept>

namespace steade {

class RbfFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cubic RBF interpolant with a linear polynomial tail:
//   s(x) = shift + scale * (sum_i weights_i ||x - c_i||^3 + tail . [x; 1])
// Training values are standardized by median and MAD before the solve.
struct RbfModel {
  PointSet centers;
  Vector weights;
  Vector tail;  // D slope coefficients followed by the constant
  double value_shift = 0.0;
  double value_scale = 1.0;
  double value_min = 0.0;
  double value_max = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(centers.cols()); }

  double predict(const Vector& x) const;
  Vector predict(const PointSet& xs, Exec exec = Exec::parallel) const;
};

// Needs m >= D+1 pairwise-distinct points in the cube. Throws RbfFitError on
// too few points, duplicate points, or a singular system after jitter.
RbfModel fit_rbf(const PointSet& points, std::span<const double> values);

double rbf_predict(const RbfModel& model, const Vector& x);

struct DycorsConfig {
  double sigma_init = 0.2;
  double sigma_min = 0.2 * 0.015625;  // six halvings
  std::size_t success_threshold = 3;
  std::size_t failure_threshold = 0;  // 0 selects max(5, D)
};

// Step-size and schedule bookkeeping for DYCORS candidate generation.
struct DycorsState {
  double sigma = 0.2;
  double sigma_init = 0.2;
  double sigma_min = 0.2 * 0.015625;
  std::size_t success_threshold = 3;
  std::size_t failure_threshold = 5;
  std::size_t consecutive_failures = 0;
  std::size_t consecutive_successes = 0;
  std::size_t n0 = 0;         // evaluations spent before the adaptive phase
  std::size_t max_evals = 0;  // total evaluation budget

  static DycorsState make(const DycorsConfig& config, std::size_t dim, std::size_t n0,
                          std::size_t max_evals);

  // Halves sigma after failure_threshold consecutive failures, doubles it
  // (capped at sigma_init) after success_threshold consecutive successes.
  void record(bool improved);
};

// Per-coordinate perturbation probability, clamped to [1/D, 1].
double dycors_probability(const DycorsState& state, std::size_t n_evals, std::size_t dim);

PointSet dycors_candidates(const Vector& best, const DycorsState& state, std::size_t n_evals,
                           std::size_t n_cand, Rng& rng);

// Greedy SRBF merit selection. Slot k uses weights[k]: the score is
// w * V_rbf + (1 - w) * V_dist with both terms min-max normalized over the
// candidates, V_dist measured to the evaluated points plus earlier picks.
// Returns the indices of the chosen candidates in pick order.
std::vector<std::size_t> srbf_select_indices(const PointSet& candidates, const RbfModel& model,
                                             const PointSet& evaluated,
                                             std::span<const double> weights);

PointSet srbf_select(const PointSet& candidates, const RbfModel& model, const PointSet& evaluated,
                     std::span<const double> weights);
PointSet srbf_select(const PointSet& candidates, const RbfModel& model, const PointSet& evaluated,
                     double weight, std::size_t q);

}  // namespace steade

#endif  // STEADE_RBF_HPP
