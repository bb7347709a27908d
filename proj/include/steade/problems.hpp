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

#ifndef STEADE_PROBLEMS_HPP
#define STEADE_PROBLEMS_HPP

#include "steade/common.hpp"
#include "steade/space.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace steade {

// Synthetic minimization problem on a native box.
struct BenchmarkProblem {
  std::string name;
  Vector lower;
  Vector upper;
  double f_opt = 0.0;
  double noise_std = 0.0;
  std::function<double(const Vector&)> f;

  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }
  ParamSpace space() const { return ParamSpace::box(lower, upper); }

  // Native point of a unit-cube point.
  Vector to_native(const Vector& cube) const;

  // Observed value: f(x) plus, for noisy variants, Gaussian noise that is a
  // pure function of (noise_seed, x).
  double evaluate(const Vector& native, std::uint64_t noise_seed = 0) const;
  double evaluate_noise_free(const Vector& native) const { return f(native); }
};

// Test functions at their native arguments.
double sphere(const Vector& x);
double rosenbrock(const Vector& x);
double rastrigin(const Vector& x);
double ackley(const Vector& x);
double levy(const Vector& x);
double branin(const Vector& x);

// sphere, rosenbrock, rastrigin, ackley, levy (all D=8), branin (D=2), and
// the noisy sphere_noisy / branin_noisy variants (noise_std 0.05).
const std::vector<BenchmarkProblem>& builtin_problems();

// Throws std::invalid_argument for unknown names.
const BenchmarkProblem& find_problem(std::string_view name);

}  // namespace steade

#endif  // STEADE_PROBLEMS_HPP
