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

#include "steade/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace steade::kernels {
namespace {

// Below these sizes the fork/join cost dominates.
constexpr Eigen::Index kParallelRows = 64;
constexpr Eigen::Index kParallelSamples = 512;

inline double rbf_one(const PointSet& centers, const Vector& weights, const Vector& tail,
                      const PointSet& queries, Eigen::Index c) {
  const Eigen::Index dim = queries.cols();
  double s = tail[dim];
  for (Eigen::Index j = 0; j < dim; ++j) s += tail[j] * queries(c, j);
  for (Eigen::Index i = 0; i < centers.rows(); ++i) {
    const double r = std::sqrt(squared_distance(queries.row(c), centers.row(i)));
    s += weights[i] * r * r * r;
  }
  return s;
}

inline double min_one(const PointSet& queries, const PointSet& refs, Eigen::Index c) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < refs.rows(); ++r) {
    best = std::min(best, squared_distance(queries.row(c), refs.row(r)));
  }
  return best;
}

inline void matern_row(const PointSet& a, const PointSet& b, const Vector& inv_ls,
                       double signal_var, Eigen::MatrixXd& out, Eigen::Index i) {
  static const double sqrt5 = std::sqrt(5.0);
  for (Eigen::Index k = 0; k < b.rows(); ++k) {
    double r2 = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double d = (a(i, j) - b(k, j)) * inv_ls[j];
      r2 += d * d;
    }
    const double r = std::sqrt(r2);
    out(i, k) = signal_var * (1.0 + sqrt5 * r + (5.0 / 3.0) * r2) * std::exp(-sqrt5 * r);
  }
}

// Improvements for samples [begin, begin + out.size()). Each sample is
// computed column by column in the same order regardless of the chunking.
constexpr Eigen::Index kSampleChunk = 256;

void improvements_chunk(const Eigen::MatrixXd& normals, const Vector& mean,
                        const Eigen::MatrixXd& chol, double best, Eigen::Index begin,
                        Eigen::Ref<Eigen::ArrayXd> out) {
  const Eigen::Index len = out.size();
  const Eigen::Index q = mean.size();
  Eigen::ArrayXd lowest = Eigen::ArrayXd::Constant(len, std::numeric_limits<double>::infinity());
  Eigen::ArrayXd y(len);
  for (Eigen::Index j = 0; j < q; ++j) {
    y.setConstant(mean[j]);
    for (Eigen::Index k = 0; k <= j; ++k) {
      y += chol(j, k) * normals.col(k).segment(begin, len).array();
    }
    lowest = lowest.min(y);
  }
  out = (best - lowest).max(0.0);
}

}  // namespace

void rbf_eval_serial(const PointSet& centers, const Vector& weights, const Vector& tail,
                     const PointSet& queries, std::span<double> out) {
  for (Eigen::Index c = 0; c < queries.rows(); ++c) {
    out[static_cast<std::size_t>(c)] = rbf_one(centers, weights, tail, queries, c);
  }
}

void rbf_eval_parallel(const PointSet& centers, const Vector& weights, const Vector& tail,
                       const PointSet& queries, std::span<double> out) {
  const Eigen::Index n = queries.rows();
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (Eigen::Index c = 0; c < n; ++c) {
    out[static_cast<std::size_t>(c)] = rbf_one(centers, weights, tail, queries, c);
  }
}

void min_sq_distance_serial(const PointSet& queries, const PointSet& refs, std::span<double> out) {
  for (Eigen::Index c = 0; c < queries.rows(); ++c) {
    out[static_cast<std::size_t>(c)] = min_one(queries, refs, c);
  }
}

void min_sq_distance_parallel(const PointSet& queries, const PointSet& refs,
                              std::span<double> out) {
  const Eigen::Index n = queries.rows();
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (Eigen::Index c = 0; c < n; ++c) {
    out[static_cast<std::size_t>(c)] = min_one(queries, refs, c);
  }
}

void matern52_cross_serial(const PointSet& a, const PointSet& b, const Vector& inv_lengthscale,
                           double signal_var, Eigen::MatrixXd& out) {
  out.resize(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) matern_row(a, b, inv_lengthscale, signal_var, out, i);
}

void matern52_cross_parallel(const PointSet& a, const PointSet& b, const Vector& inv_lengthscale,
                             double signal_var, Eigen::MatrixXd& out) {
  out.resize(a.rows(), b.rows());
  const Eigen::Index n = a.rows();
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (Eigen::Index i = 0; i < n; ++i) matern_row(a, b, inv_lengthscale, signal_var, out, i);
}

double qei_mc_serial(const Eigen::MatrixXd& normals, const Vector& mean,
                     const Eigen::MatrixXd& chol, double best) {
  const Eigen::Index n = normals.rows();
  Eigen::ArrayXd improvement(n);
  for (Eigen::Index begin = 0; begin < n; begin += kSampleChunk) {
    const Eigen::Index len = std::min(kSampleChunk, n - begin);
    improvements_chunk(normals, mean, chol, best, begin, improvement.segment(begin, len));
  }
  double sum = 0.0;
  for (Eigen::Index s = 0; s < n; ++s) sum += improvement[s];
  return sum / static_cast<double>(n);
}

double qei_mc_parallel(const Eigen::MatrixXd& normals, const Vector& mean,
                       const Eigen::MatrixXd& chol, double best) {
  const Eigen::Index n = normals.rows();
  if (n < kParallelSamples) return qei_mc_serial(normals, mean, chol, best);
  Eigen::ArrayXd improvement(n);
  const Eigen::Index chunks = (n + kSampleChunk - 1) / kSampleChunk;
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < chunks; ++c) {
    const Eigen::Index begin = c * kSampleChunk;
    const Eigen::Index len = std::min(kSampleChunk, n - begin);
    improvements_chunk(normals, mean, chol, best, begin, improvement.segment(begin, len));
  }
  double sum = 0.0;
  for (Eigen::Index s = 0; s < n; ++s) sum += improvement[s];
  return sum / static_cast<double>(n);
}

}  // namespace steade::kernels
