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

#include "steade/qei.hpp"

#include "steade/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace steade {

Eigen::MatrixXd psd_cholesky(const Eigen::MatrixXd& cov) {
  if (!cov.allFinite()) throw std::runtime_error("psd_cholesky: non-finite covariance");
  const Eigen::Index n = cov.rows();
  const double scale = std::max(cov.diagonal().maxCoeff(), 0.0);
  const double threshold = 1e-13 * scale;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = cov(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (pivot <= threshold) continue;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = cov(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / root;
    }
  }
  return l;
}

double qei(const GpModel& model, const PointSet& batch, double best, const QmcSampler& sampler,
           Exec exec) {
  if (batch.rows() < 1) throw std::invalid_argument("qei: empty batch");
  if (static_cast<std::size_t>(batch.rows()) > sampler.dimension()) {
    throw std::invalid_argument("qei: sampler has fewer columns than the batch");
  }
  GpPosterior post = model.posterior(batch, exec);
  post.cov.diagonal().array() += 1e-12 * model.signal_variance();
  const Eigen::MatrixXd chol = psd_cholesky(post.cov);
  if (exec == Exec::parallel) {
    return kernels::qei_mc_parallel(sampler.normals(), post.mean, chol, best);
  }
  return kernels::qei_mc_serial(sampler.normals(), post.mean, chol, best);
}

namespace {

struct StartResult {
  PointSet batch;
  double value;
};

StartResult local_search(const GpModel& model, PointSet batch, double value, double best,
                         const QmcSampler& sampler, const QeiOptions& options, Rng& rng) {
  const Eigen::Index q = batch.rows();
  const Eigen::Index dim = batch.cols();
  std::vector<double> step(static_cast<std::size_t>(q), options.initial_step);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    for (Eigen::Index j = 0; j < q; ++j) {
      double& sj = step[static_cast<std::size_t>(j)];
      const Vector previous = batch.row(j).transpose();
      for (Eigen::Index c = 0; c < dim; ++c) {
        batch(j, c) = std::clamp(previous[c] + sj * rng.normal(), 0.0, 1.0);
      }
      const double trial = qei(model, batch, best, sampler, Exec::serial);
      if (trial > value) {
        value = trial;
        sj = std::min(1.5 * sj, 0.5);
      } else {
        batch.row(j) = previous.transpose();
        sj = std::max(0.85 * sj, 1e-4);
      }
    }
  }
  return {std::move(batch), value};
}

}  // namespace

QeiSearchResult optimize_qei_detailed(const GpModel& model, std::size_t q, Rng& rng,
                                      const QeiOptions& options) {
  if (q == 0) throw std::invalid_argument("optimize_qei: batch size must be positive");
  const auto dim = static_cast<Eigen::Index>(model.dimension());
  const std::uint64_t base = rng.next();
  const QmcSampler sampler(q, options.samples, derive_seed(base, {0}));
  const double best = model.best_value();
  const Vector incumbent = model.best_point();

  const std::size_t n_random = options.random_starts;
  const std::size_t n_starts = n_random + options.incumbent_starts;
  if (n_starts == 0) throw std::invalid_argument("optimize_qei: no starting batches");
  std::vector<PointSet> starts(n_starts);
  std::vector<Rng> streams;
  streams.reserve(n_starts);
  for (std::size_t s = 0; s < n_starts; ++s) {
    streams.emplace_back(derive_seed(base, {s + 1}));
    Rng& r = streams.back();
    PointSet batch(static_cast<Eigen::Index>(q), dim);
    if (s < n_random) {
      for (Eigen::Index i = 0; i < batch.size(); ++i) batch.data()[i] = r.uniform();
    } else {
      // Incumbent neighbourhoods of increasing radius.
      const double radius = 0.02 * std::pow(2.5, static_cast<double>(s - n_random));
      for (Eigen::Index j = 0; j < batch.rows(); ++j) {
        for (Eigen::Index c = 0; c < dim; ++c) {
          batch(j, c) = std::clamp(incumbent[c] + radius * r.normal(), 0.0, 1.0);
        }
      }
    }
    starts[s] = std::move(batch);
  }

  QeiSearchResult result;
  result.start_values.resize(n_starts);
  std::vector<StartResult> finished(n_starts);
  const auto n = static_cast<std::ptrdiff_t>(n_starts);
  const bool parallel = options.exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto k = static_cast<std::size_t>(s);
    const double v0 = qei(model, starts[k], best, sampler, Exec::serial);
    result.start_values[k] = v0;
    finished[k] = local_search(model, starts[k], v0, best, sampler, options, streams[k]);
  }

  std::size_t winner = 0;
  for (std::size_t s = 1; s < n_starts; ++s) {
    if (finished[s].value > finished[winner].value) winner = s;
  }
  result.batch = std::move(finished[winner].batch);
  result.value = finished[winner].value;
  return result;
}

PointSet optimize_qei(const GpModel& model, std::size_t q, Rng& rng, const QeiOptions& options) {
  return optimize_qei_detailed(model, q, rng, options).batch;
}

}  // namespace steade
