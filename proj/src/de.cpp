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

#include "steade/de.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steade {

void DeConfig::validate() const {
  if (population_size < 4) throw std::invalid_argument("DeConfig: population size must be >= 4");
  if (!(F >= 0.0)) throw std::invalid_argument("DeConfig: F must be non-negative");
  if (!(Cr >= 0.0 && Cr <= 1.0)) throw std::invalid_argument("DeConfig: Cr must lie in [0,1]");
}

IndexTriple sample_distinct_indices(std::size_t np, std::size_t i, Rng& rng) {
  if (np < 4) throw std::invalid_argument("sample_distinct_indices: need np >= 4");
  if (i >= np) throw std::invalid_argument("sample_distinct_indices: target index out of range");
  // Draw from the np-1 indices other than i, then skip over i.
  auto shift = [i](std::size_t k) { return k >= i ? k + 1 : k; };
  const std::size_t a = rng.index(np - 1);
  std::size_t b = rng.index(np - 2);
  if (b >= a) ++b;
  std::size_t c = rng.index(np - 3);
  const std::size_t lo = std::min(a, b);
  const std::size_t hi = std::max(a, b);
  if (c >= lo) ++c;
  if (c >= hi) ++c;
  return {shift(a), shift(b), shift(c)};
}

PointSet tile_rows(const PointSet& batch, std::size_t rows) {
  if (batch.rows() == 0) throw std::invalid_argument("tile_rows: empty batch");
  PointSet out(static_cast<Eigen::Index>(rows), batch.cols());
  for (std::size_t r = 0; r < rows; ++r) {
    out.row(static_cast<Eigen::Index>(r)) = batch.row(static_cast<Eigen::Index>(r) % batch.rows());
  }
  return out;
}

Vector reflect_into_cube(Vector v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    double x = v[j];
    for (int k = 0; k < 8 && (x < 0.0 || x > 1.0); ++k) x = x < 0.0 ? -x : 2.0 - x;
    v[j] = std::clamp(x, 0.0, 1.0);
  }
  return v;
}

Vector bayesian_mutation(const Population& pop, const CandidatePools& pools,
                         const IndexTriple& idx, std::size_t G, double F, const Vector& uniform) {
  if (G < 1) throw std::invalid_argument("bayesian_mutation: generation must be >= 1");
  const auto r1 = static_cast<Eigen::Index>(idx.r1);
  const auto r2 = static_cast<Eigen::Index>(idx.r2);
  const auto r3 = static_cast<Eigen::Index>(idx.r3);
  const double decay = 1.0 / static_cast<double>(G);
  Vector v = pools.B.row(r1).transpose() + F * (pools.R.row(r2) - pools.R.row(r3)).transpose() +
             decay * uniform.cwiseProduct((pop.X.row(r2) - pop.X.row(r3)).transpose());
  return reflect_into_cube(std::move(v));
}

Vector bayesian_mutation(const Population& pop, const CandidatePools& pools,
                         const IndexTriple& idx, std::size_t G, double F, Rng& rng) {
  Vector uniform(pop.X.cols());
  for (Eigen::Index j = 0; j < uniform.size(); ++j) uniform[j] = rng.uniform();
  return bayesian_mutation(pop, pools, idx, G, F, uniform);
}

Vector rand1_mutation(const PointSet& X, const IndexTriple& idx, double F) {
  const auto r1 = static_cast<Eigen::Index>(idx.r1);
  const auto r2 = static_cast<Eigen::Index>(idx.r2);
  const auto r3 = static_cast<Eigen::Index>(idx.r3);
  Vector v = X.row(r1).transpose() + F * (X.row(r2) - X.row(r3)).transpose();
  return reflect_into_cube(std::move(v));
}

Vector binomial_crossover(const Vector& x, const Vector& v, double Cr, Rng& rng) {
  if (x.size() != v.size()) throw std::invalid_argument("binomial_crossover: size mismatch");
  const std::size_t j_rand = rng.index(static_cast<std::size_t>(x.size()));
  Vector u = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double r = rng.uniform();
    if (r <= Cr || static_cast<std::size_t>(j) == j_rand) u[j] = v[j];
  }
  return u;
}

bool trial_wins(double fx, double fu) {
  if (std::isnan(fu)) return false;
  if (std::isnan(fx)) return true;
  return fu <= fx;
}

std::pair<Vector, double> select(const Vector& x, const Vector& u, double fx, double fu) {
  if (trial_wins(fx, fu)) return {u, fu};
  return {x, fx};
}

}  // namespace steade
