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

// Serial reference against OpenMP kernels. Sizes follow the optimizer's
// working set: 16*D*100 candidates against up to 128 archive points.

#include "steade/kernels.hpp"
#include "steade/rng.hpp"
#include "steade/sobol.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace steade;

namespace {

PointSet uniform_points(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  PointSet x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  return x;
}

template <bool Parallel>
void BM_RbfEval(benchmark::State& state) {
  const Eigen::Index d = 8;
  const PointSet centers = uniform_points(128, d, 1);
  const PointSet queries = uniform_points(state.range(0), d, 2);
  const Vector weights = Vector::LinSpaced(128, -1.0, 1.0);
  const Vector tail = Vector::Ones(d + 1);
  std::vector<double> out(static_cast<std::size_t>(queries.rows()));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::rbf_eval_parallel(centers, weights, tail, queries, out);
    } else {
      kernels::rbf_eval_serial(centers, weights, tail, queries, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MinDistance(benchmark::State& state) {
  const PointSet refs = uniform_points(128, 8, 3);
  const PointSet queries = uniform_points(state.range(0), 8, 4);
  std::vector<double> out(static_cast<std::size_t>(queries.rows()));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::min_sq_distance_parallel(queries, refs, out);
    } else {
      kernels::min_sq_distance_serial(queries, refs, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Matern(benchmark::State& state) {
  const PointSet a = uniform_points(state.range(0), 8, 5);
  const PointSet b = uniform_points(state.range(0), 8, 6);
  const Vector inv_ls = Vector::Constant(8, 2.0);
  Eigen::MatrixXd out;
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::matern52_cross_parallel(a, b, inv_ls, 1.0, out);
    } else {
      kernels::matern52_cross_serial(a, b, inv_ls, 1.0, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <bool Parallel>
void BM_QeiMc(benchmark::State& state) {
  const Eigen::Index q = 8;
  const QmcSampler sampler(q, static_cast<std::size_t>(state.range(0)), 7);
  const Vector mean = Vector::LinSpaced(q, 0.0, 0.7);
  Eigen::MatrixXd chol = Eigen::MatrixXd::Identity(q, q) * 0.3;
  chol.col(0).array() += 0.1;
  double value = 0.0;
  for (auto _ : state) {
    value = Parallel ? kernels::qei_mc_parallel(sampler.normals(), mean, chol, 0.2)
                     : kernels::qei_mc_serial(sampler.normals(), mean, chol, 0.2);
    benchmark::DoNotOptimize(value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RbfEval<false>)->Name("rbf_eval/serial")->Arg(1000)->Arg(12800);
BENCHMARK(BM_RbfEval<true>)->Name("rbf_eval/parallel")->Arg(1000)->Arg(12800);
BENCHMARK(BM_MinDistance<false>)->Name("min_sq_distance/serial")->Arg(1000)->Arg(12800);
BENCHMARK(BM_MinDistance<true>)->Name("min_sq_distance/parallel")->Arg(1000)->Arg(12800);
BENCHMARK(BM_Matern<false>)->Name("matern52_cross/serial")->Arg(128)->Arg(512);
BENCHMARK(BM_Matern<true>)->Name("matern52_cross/parallel")->Arg(128)->Arg(512);
BENCHMARK(BM_QeiMc<false>)->Name("qei_mc/serial")->Arg(4096)->Arg(65536);
BENCHMARK(BM_QeiMc<true>)->Name("qei_mc/parallel")->Arg(4096)->Arg(65536);

BENCHMARK_MAIN();
