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

#include "steade/rbf.hpp"

#include "steade/kernels.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace steade {
namespace {

constexpr double kDuplicateDistance = 1e-10;
constexpr double kJitter = 1e-8;

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace

double RbfModel::predict(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw std::invalid_argument("rbf_predict: dimension mismatch");
  }
  PointSet q = x.transpose();
  double out = 0.0;
  kernels::rbf_eval_serial(centers, weights, tail, q, std::span<double>(&out, 1));
  return value_shift + value_scale * out;
}

Vector RbfModel::predict(const PointSet& xs, Exec exec) const {
  if (static_cast<std::size_t>(xs.cols()) != dimension()) {
    throw std::invalid_argument("rbf_predict: dimension mismatch");
  }
  Vector out(xs.rows());
  std::span<double> view(out.data(), static_cast<std::size_t>(out.size()));
  if (exec == Exec::parallel) {
    kernels::rbf_eval_parallel(centers, weights, tail, xs, view);
  } else {
    kernels::rbf_eval_serial(centers, weights, tail, xs, view);
  }
  return value_shift + value_scale * out.array();
}

RbfModel fit_rbf(const PointSet& points, std::span<const double> values) {
  const Eigen::Index m = points.rows();
  const Eigen::Index dim = points.cols();
  if (static_cast<std::size_t>(m) != values.size()) {
    throw RbfFitError("fit_rbf: point/value count mismatch");
  }
  if (dim < 1 || m < dim + 1) {
    throw RbfFitError("fit_rbf: need at least D+1 points, got " + std::to_string(m));
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = i + 1; k < m; ++k) {
      if (std::sqrt(squared_distance(points.row(i), points.row(k))) <= kDuplicateDistance) {
        throw RbfFitError("fit_rbf: duplicate points");
      }
    }
  }

  RbfModel model;
  model.centers = points;
  std::vector<double> v(values.begin(), values.end());
  model.value_min = *std::min_element(v.begin(), v.end());
  model.value_max = *std::max_element(v.begin(), v.end());
  model.value_shift = median_of(v);
  std::vector<double> deviations(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) deviations[i] = std::abs(v[i] - model.value_shift);
  double scale = median_of(deviations);
  if (!(scale > 1e-12)) scale = std::max(model.value_max - model.value_min, 0.0);
  if (!(scale > 1e-12)) scale = 1.0;
  model.value_scale = scale;

  const Eigen::Index n = m + dim + 1;
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = i + 1; k < m; ++k) {
      const double r = std::sqrt(squared_distance(points.row(i), points.row(k)));
      system(i, k) = system(k, i) = r * r * r;
    }
    for (Eigen::Index j = 0; j < dim; ++j) system(i, m + j) = system(m + j, i) = points(i, j);
    system(i, m + dim) = system(m + dim, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    rhs[i] = (values[static_cast<std::size_t>(i)] - model.value_shift) / scale;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    system.topLeftCorner(m, m).diagonal().array() += kJitter;
    lu.compute(system);
    if (!lu.isInvertible()) throw RbfFitError("fit_rbf: singular system (degenerate geometry)");
  }
  const Eigen::VectorXd coef = lu.solve(rhs);
  if (!coef.allFinite()) throw RbfFitError("fit_rbf: non-finite solution");
  model.weights = coef.head(m);
  model.tail = coef.tail(dim + 1);
  return model;
}

double rbf_predict(const RbfModel& model, const Vector& x) { return model.predict(x); }

DycorsState DycorsState::make(const DycorsConfig& config, std::size_t dim, std::size_t n0,
                              std::size_t max_evals) {
  DycorsState s;
  s.sigma = s.sigma_init = config.sigma_init;
  s.sigma_min = config.sigma_min;
  s.success_threshold = config.success_threshold;
  s.failure_threshold =
      config.failure_threshold > 0 ? config.failure_threshold : std::max<std::size_t>(5, dim);
  s.n0 = n0;
  s.max_evals = max_evals;
  return s;
}

void DycorsState::record(bool improved) {
  if (improved) {
    ++consecutive_successes;
    consecutive_failures = 0;
  } else {
    ++consecutive_failures;
    consecutive_successes = 0;
  }
  if (consecutive_failures >= failure_threshold) {
    sigma = std::max(0.5 * sigma, sigma_min);
    consecutive_failures = 0;
  }
  if (consecutive_successes >= success_threshold) {
    sigma = std::min(2.0 * sigma, sigma_init);
    consecutive_successes = 0;
  }
}

double dycors_probability(const DycorsState& state, std::size_t n_evals, std::size_t dim) {
  const double d = static_cast<double>(dim);
  const double base = std::min(20.0 / d, 1.0);
  const double used = static_cast<double>(n_evals > state.n0 ? n_evals - state.n0 : 1);
  const double budget =
      static_cast<double>(state.max_evals > state.n0 ? state.max_evals - state.n0 : 0);
  double p = base;
  if (budget > 1.0) p = base * (1.0 - std::log(used) / std::log(budget));
  return std::clamp(p, 1.0 / d, 1.0);
}

PointSet dycors_candidates(const Vector& best, const DycorsState& state, std::size_t n_evals,
                           std::size_t n_cand, Rng& rng) {
  const auto dim = static_cast<std::size_t>(best.size());
  const double p = dycors_probability(state, n_evals, dim);
  PointSet out(static_cast<Eigen::Index>(n_cand), best.size());
  std::vector<char> mask(dim);
  for (std::size_t c = 0; c < n_cand; ++c) {
    bool any = false;
    for (std::size_t j = 0; j < dim; ++j) {
      mask[j] = rng.uniform() < p;
      any = any || mask[j];
    }
    if (!any) mask[rng.index(dim)] = 1;
    const auto row = static_cast<Eigen::Index>(c);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      double x = best[col];
      if (mask[j]) x += state.sigma * rng.normal();
      out(row, col) = std::clamp(x, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<std::size_t> srbf_select_indices(const PointSet& candidates, const RbfModel& model,
                                             const PointSet& evaluated,
                                             std::span<const double> weights) {
  const auto n = static_cast<std::size_t>(candidates.rows());
  const std::size_t q = weights.size();
  if (n == 0) throw std::invalid_argument("srbf_select: no candidates");
  if (n < q) throw std::invalid_argument("srbf_select: fewer candidates than batch size");

  const Vector predicted = model.predict(candidates);
  const double smin = predicted.minCoeff();
  const double smax = predicted.maxCoeff();
  Vector value_score(candidates.rows());
  for (Eigen::Index c = 0; c < candidates.rows(); ++c) {
    value_score[c] = smax > smin ? (predicted[c] - smin) / (smax - smin) : 1.0;
  }

  std::vector<double> dist2(n);
  kernels::min_sq_distance_parallel(candidates, evaluated, dist2);

  std::vector<char> taken(n, 0);
  std::vector<std::size_t> picks;
  for (std::size_t slot = 0; slot < q; ++slot) {
    const double w = weights[slot];
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (taken[c]) continue;
      const double d = std::sqrt(dist2[c]);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    std::size_t choice = n;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (taken[c]) continue;
      const double d = std::sqrt(dist2[c]);
      const double dist_score = dmax > dmin ? (dmax - d) / (dmax - dmin) : 1.0;
      const double score = w * value_score[static_cast<Eigen::Index>(c)] + (1.0 - w) * dist_score;
      if (score < best_score) {
        best_score = score;
        choice = c;
      }
    }
    if (choice == n) {
      // Only NaN scores remain; fall back to the first free candidate.
      choice = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
    }
    taken[choice] = 1;
    picks.push_back(choice);
    const auto chosen = static_cast<Eigen::Index>(choice);
    for (std::size_t c = 0; c < n; ++c) {
      if (taken[c]) continue;
      dist2[c] = std::min(dist2[c], squared_distance(candidates.row(static_cast<Eigen::Index>(c)),
                                                     candidates.row(chosen)));
    }
  }
  return picks;
}

PointSet srbf_select(const PointSet& candidates, const RbfModel& model, const PointSet& evaluated,
                     std::span<const double> weights) {
  const auto picks = srbf_select_indices(candidates, model, evaluated, weights);
  PointSet out(static_cast<Eigen::Index>(picks.size()), candidates.cols());
  for (std::size_t k = 0; k < picks.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = candidates.row(static_cast<Eigen::Index>(picks[k]));
  }
  return out;
}

PointSet srbf_select(const PointSet& candidates, const RbfModel& model, const PointSet& evaluated,
                     double weight, std::size_t q) {
  const std::vector<double> weights(q, weight);
  return srbf_select(candidates, model, evaluated, weights);
}

}  // namespace steade
