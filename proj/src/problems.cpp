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

#include "steade/problems.hpp"

#include "steade/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steade {

using std::numbers::pi;

double sphere(const Vector& x) { return x.squaredNorm(); }

double rosenbrock(const Vector& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double rastrigin(const Vector& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * x[i] - 10.0 * std::cos(2.0 * pi * x[i]);
  return s;
}

double ackley(const Vector& x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sq += x[i] * x[i];
    cs += std::cos(2.0 * pi * x[i]);
  }
  const double v = -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
  return std::max(v, 0.0);  // rounding at the optimum can dip below zero
}

double levy(const Vector& x) {
  const Eigen::Index d = x.size();
  auto w = [&](Eigen::Index i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  const double s0 = std::sin(pi * w(0));
  double s = s0 * s0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    const double t = std::sin(pi * wi + 1.0);
    s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * t * t);
  }
  const double wd = w(d - 1);
  const double t = std::sin(2.0 * pi * wd);
  s += (wd - 1.0) * (wd - 1.0) * (1.0 + t * t);
  return s;
}

double branin(const Vector& x) {
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double a = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return a * a + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

Vector BenchmarkProblem::to_native(const Vector& cube) const {
  return lower.array() + cube.array() * (upper - lower).array();
}

double BenchmarkProblem::evaluate(const Vector& native, std::uint64_t noise_seed) const {
  const double value = f(native);
  if (noise_std <= 0.0) return value;
  std::uint64_t h = derive_seed(noise_seed, {0x6e6f697365ULL});
  for (Eigen::Index i = 0; i < native.size(); ++i) h = mix64(h ^ std::bit_cast<std::uint64_t>(native[i]));
  Rng rng(h);
  return value + noise_std * rng.normal();
}

namespace {

BenchmarkProblem make(std::string name, std::size_t dim, double lo, double hi, double f_opt,
                      double (*fn)(const Vector&), double noise = 0.0) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {std::move(name), Vector::Constant(d, lo), Vector::Constant(d, hi), f_opt, noise, fn};
}

std::vector<BenchmarkProblem> make_builtins() {
  constexpr double kBraninMin = 0.39788735772973816;
  std::vector<BenchmarkProblem> out;
  out.push_back(make("sphere", 8, -5.12, 5.12, 0.0, sphere));
  out.push_back(make("rosenbrock", 8, -5.0, 10.0, 0.0, rosenbrock));
  out.push_back(make("rastrigin", 8, -5.12, 5.12, 0.0, rastrigin));
  out.push_back(make("ackley", 8, -32.768, 32.768, 0.0, ackley));
  out.push_back(make("levy", 8, -10.0, 10.0, 0.0, levy));
  BenchmarkProblem br{"branin", Vector(2), Vector(2), kBraninMin, 0.0, branin};
  br.lower << -5.0, 0.0;
  br.upper << 10.0, 15.0;
  out.push_back(br);
  out.push_back(make("sphere_noisy", 8, -5.12, 5.12, 0.0, sphere, 0.05));
  br.name = "branin_noisy";
  br.noise_std = 0.05;
  out.push_back(br);
  return out;
}

}  // namespace

const std::vector<BenchmarkProblem>& builtin_problems() {
  static const std::vector<BenchmarkProblem> problems = make_builtins();
  return problems;
}

const BenchmarkProblem& find_problem(std::string_view name) {
  for (const auto& p : builtin_problems()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace steade
