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

#ifndef STEADE_GP_HPP
#define STEADE_GP_HPP

#include "steade/common.hpp"
#include "steade/rng.hpp"

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>

namespace steade {

class GpFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matern-5/2 ARD hyperparameters, all in natural-log space.
struct GpHyperparameters {
  Vector log_lengthscale;
  double log_signal_var = 0.0;
  double log_noise_var = std::log(1e-6);

  // Packed as [log l_1 .. log l_D, log s^2, log noise^2].
  Vector pack() const;
  static GpHyperparameters unpack(const Vector& theta);
};

struct GpFitOptions {
  std::size_t restarts = 8;
  std::size_t max_steps = 50;
  double tolerance = 1e-5;
  std::size_t max_points = 512;
  double min_lengthscale = 0.005;
  double max_lengthscale = 4.0;
  double min_signal_var = 0.05;
  double max_signal_var = 20.0;
  double min_noise_var = 1e-8;
  double max_noise_var = 1.0;
  std::optional<GpHyperparameters> warm_start;
};

struct GpPosterior {
  Vector mean;
  Eigen::MatrixXd cov;
};

// Conditioned GP. Targets are standardized internally; every public output
// is in the caller's units.
class GpModel {
 public:
  const PointSet& train_x() const { return train_x_; }
  const Vector& train_y() const { return train_y_; }  // standardized
  const GpHyperparameters& hyperparameters() const { return hyper_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Vector& alpha() const { return alpha_; }
  double y_mean() const { return y_mean_; }
  double y_std() const { return y_std_; }
  double jitter() const { return jitter_; }
  std::size_t dimension() const { return static_cast<std::size_t>(train_x_.cols()); }

  // Prior signal variance in caller units.
  double signal_variance() const;
  // Smallest training value in caller units and its point.
  double best_value() const;
  Vector best_point() const;

  GpPosterior posterior(const PointSet& query, Exec exec = Exec::parallel) const;
  GpPosterior posterior(const Vector& x) const;

  friend GpModel condition_gp(const PointSet&, std::span<const double>, const GpHyperparameters&);

 private:
  PointSet train_x_;
  Vector train_y_;
  GpHyperparameters hyper_;
  Eigen::MatrixXd chol_;
  Vector alpha_;
  double y_mean_ = 0.0;
  double y_std_ = 1.0;
  double jitter_ = 0.0;
};

// Exact log marginal likelihood of standardized targets; fills the gradient
// with respect to the packed log-hyperparameters when grad is non-null.
// Returns -infinity when the kernel matrix is not positive definite.
double gp_log_likelihood(const PointSet& x, const Vector& y, const GpHyperparameters& hyper,
                         Vector* grad = nullptr);

// Conditions on the data with fixed hyperparameters. Escalates diagonal
// jitter from 1e-8 to 1e-4 before giving up with GpFitError.
GpModel condition_gp(const PointSet& points, std::span<const double> values,
                     const GpHyperparameters& hyper);

// Maximum-likelihood fit: multi-start projected L-BFGS in log space.
GpModel fit_gp(const PointSet& points, std::span<const double> values, Rng& rng,
               const GpFitOptions& options = {});

}  // namespace steade

#endif  // STEADE_GP_HPP
