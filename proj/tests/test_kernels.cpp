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

#include "doctest.h"
#include "steade/kernels.hpp"
#include "steade/rng.hpp"
#include "steade/sobol.hpp"

#include <omp.h>

#include <cmath>

using namespace steade;

namespace {

PointSet random_points(Eigen::Index m, Eigen::Index d, Rng& rng) {
  PointSet x(m, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  return x;
}

}  // namespace

TEST_CASE("rbf evaluation") {
  Rng rng(1);
  const PointSet centers = random_points(40, 5, rng);
  Vector w(40);
  Vector tail(6);
  for (Eigen::Index i = 0; i < 40; ++i) w[i] = rng.uniform(-1, 1);
  for (Eigen::Index i = 0; i < 6; ++i) tail[i] = rng.uniform(-1, 1);
  const PointSet q = random_points(500, 5, rng);
  std::vector<double> a(500);
  std::vector<double> b(500);
  kernels::rbf_eval_serial(centers, w, tail, q, a);
  kernels::rbf_eval_parallel(centers, w, tail, q, b);
  CHECK(a == b);
  for (Eigen::Index c = 0; c < 10; ++c) {
    double s = tail[5];
    for (Eigen::Index i = 0; i < 40; ++i) s += w[i] * std::pow((q.row(c) - centers.row(i)).norm(), 3);
    for (Eigen::Index j = 0; j < 5; ++j) s += tail[j] * q(c, j);
    CHECK(a[static_cast<std::size_t>(c)] == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("nearest squared distance") {
  Rng rng(2);
  const PointSet refs = random_points(70, 3, rng);
  const PointSet q = random_points(300, 3, rng);
  std::vector<double> a(300);
  std::vector<double> b(300);
  kernels::min_sq_distance_serial(q, refs, a);
  kernels::min_sq_distance_parallel(q, refs, b);
  CHECK(a == b);
  for (Eigen::Index c = 0; c < 300; ++c) {
    double m = INFINITY;
    for (Eigen::Index i = 0; i < 70; ++i) m = std::min(m, (q.row(c) - refs.row(i)).squaredNorm());
    REQUIRE(a[static_cast<std::size_t>(c)] == doctest::Approx(m).epsilon(1e-14));
  }
  std::vector<double> none(3);
  kernels::min_sq_distance_serial(q.topRows(3), PointSet(0, 3), none);
  CHECK(std::isinf(none[0]));
}

TEST_CASE("matern cross covariance") {
  Rng rng(3);
  const PointSet a = random_points(130, 4, rng);
  const PointSet b = random_points(90, 4, rng);
  Vector inv(4);
  inv << 2.0, 0.5, 1.0, 3.0;
  Eigen::MatrixXd s;
  Eigen::MatrixXd p;
  kernels::matern52_cross_serial(a, b, inv, 1.7, s);
  kernels::matern52_cross_parallel(a, b, inv, 1.7, p);
  CHECK((s.array() == p.array()).all());
  const double r = std::sqrt((((a.row(5) - b.row(7)).transpose().array()) * inv.array()).square().sum());
  const double expected = 1.7 * (1 + std::sqrt(5.0) * r + 5.0 * r * r / 3.0) * std::exp(-std::sqrt(5.0) * r);
  CHECK(s(5, 7) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("monte carlo improvement") {
  const QmcSampler sampler(6, 4096, 4);
  Rng rng(4);
  Vector mean(6);
  for (Eigen::Index i = 0; i < 6; ++i) mean[i] = rng.uniform(-1, 1);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) l(i, j) = rng.uniform(0.1, 0.5);
  }
  const double a = kernels::qei_mc_serial(sampler.normals(), mean, l, 0.2);
  const double b = kernels::qei_mc_parallel(sampler.normals(), mean, l, 0.2);
  CHECK(a == b);
  double s = 0.0;
  for (Eigen::Index k = 0; k < 4096; ++k) {
    const Vector y = mean + l * sampler.normals().row(k).transpose();
    s += std::max(0.0, 0.2 - y.minCoeff());
  }
  CHECK(a == doctest::Approx(s / 4096).epsilon(1e-12));
}

TEST_CASE("parallel results do not depend on the thread count") {
  Rng rng(5);
  const PointSet centers = random_points(30, 3, rng);
  const Vector w = Vector::Constant(30, 0.1);
  const Vector tail = Vector::Constant(4, 0.2);
  const PointSet q = random_points(1000, 3, rng);
  std::vector<double> one(1000);
  std::vector<double> many(1000);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  kernels::rbf_eval_parallel(centers, w, tail, q, one);
  const QmcSampler sampler(3, 2048, 1);
  const double e1 = kernels::qei_mc_parallel(sampler.normals(), Vector::Zero(3), Eigen::MatrixXd::Identity(3, 3), 0.0);
  omp_set_num_threads(4);
  kernels::rbf_eval_parallel(centers, w, tail, q, many);
  const double e4 = kernels::qei_mc_parallel(sampler.normals(), Vector::Zero(3), Eigen::MatrixXd::Identity(3, 3), 0.0);
  omp_set_num_threads(saved);
  CHECK(one == many);
  CHECK(e1 == e4);
}
