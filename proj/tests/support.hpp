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

#ifndef STEADE_TESTS_SUPPORT_HPP
#define STEADE_TESTS_SUPPORT_HPP

// Independent oracles shared by the unit and acceptance tests.

#include "steade/common.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace steade::test {

// Gaussian elimination with partial pivoting in long double.
inline std::vector<double> dense_solve(std::vector<std::vector<long double>> a,
                                       std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    if (a[pivot][c] == 0.0L) throw std::runtime_error("dense_solve: singular");
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  std::vector<long double> xl(n);
  for (std::size_t r = n; r-- > 0;) {
    long double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * xl[k];
    xl[r] = s / a[r][r];
    x[r] = static_cast<double>(xl[r]);
  }
  return x;
}

// Cubic RBF with linear tail, fitted on raw values by dense_solve and
// evaluated in long double.
struct DenseRbf {
  PointSet centers;
  std::vector<double> coef;  // m weights, D slopes, constant

  DenseRbf(const PointSet& x, const std::vector<double>& f) : centers(x) {
    const auto m = static_cast<std::size_t>(x.rows());
    const auto d = static_cast<std::size_t>(x.cols());
    const std::size_t n = m + d + 1;
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n, 0.0L));
    std::vector<long double> b(n, 0.0L);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        long double r2 = 0.0L;
        for (std::size_t k = 0; k < d; ++k) {
          const long double t = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                                x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
          r2 += t * t;
        }
        a[i][j] = r2 * std::sqrt(r2);
      }
      for (std::size_t k = 0; k < d; ++k) {
        a[i][m + k] = a[m + k][i] = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      }
      a[i][m + d] = a[m + d][i] = 1.0L;
      b[i] = f[i];
    }
    coef = dense_solve(a, b);
  }

  double operator()(const Vector& q) const {
    const auto m = centers.rows();
    const auto d = centers.cols();
    long double s = coef[static_cast<std::size_t>(m + d)];
    for (Eigen::Index i = 0; i < m; ++i) {
      long double r2 = 0.0L;
      for (Eigen::Index k = 0; k < d; ++k) {
        const long double t = static_cast<long double>(q[k]) - centers(i, k);
        r2 += t * t;
      }
      s += coef[static_cast<std::size_t>(i)] * r2 * std::sqrt(r2);
    }
    for (Eigen::Index k = 0; k < d; ++k) s += coef[static_cast<std::size_t>(m + k)] * q[k];
    return static_cast<double>(s);
  }
};

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Closed-form expected improvement below f_star for N(mu, sigma^2).
inline double analytic_ei(double mu, double sigma, double f_star) {
  if (sigma <= 0.0) return std::max(f_star - mu, 0.0);
  const double z = (f_star - mu) / sigma;
  return (f_star - mu) * normal_cdf(z) + sigma * normal_pdf(z);
}

// Pearson chi-square statistic and its upper-tail p-value. Cells with zero
// expectation must have zero counts.
struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  ChiSquare out;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (expected[k] <= 0.0) {
      if (observed[k] > 0.0) out.statistic = INFINITY;
      continue;
    }
    const double diff = observed[k] - expected[k];
    out.statistic += diff * diff / expected[k];
    ++cells;
  }
  out.dof = cells > 0 ? cells - 1 : 0;
  out.p_value = std::isfinite(out.statistic) && out.dof > 0
                    ? boost::math::gamma_q(0.5 * static_cast<double>(out.dof), 0.5 * out.statistic)
                    : 0.0;
  return out;
}

// Exact law of the number of donor genes in a binomial-crossover trial,
// enumerating j_rand and every Bernoulli outcome of the other genes.
inline std::vector<double> crossover_count_law(std::size_t dim, double cr) {
  std::vector<double> law(dim + 1, 0.0);
  for (std::size_t j_rand = 0; j_rand < dim; ++j_rand) {
    const std::uint64_t outcomes = std::uint64_t{1} << (dim - 1);
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
      std::size_t taken = 1;  // j_rand always comes from the donor
      double prob = 1.0 / static_cast<double>(dim);
      for (std::size_t g = 0; g + 1 < dim; ++g) {
        const bool from_donor = ((mask >> g) & 1U) != 0;
        prob *= from_donor ? cr : 1.0 - cr;
        taken += from_donor ? 1 : 0;
      }
      law[taken] += prob;
    }
  }
  return law;
}

// Latin and mirror-symmetry invariants of a symmetric Latin hypercube.
inline bool valid_slhd(const PointSet& x) {
  const auto n = x.rows();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double level = x(i, j) * static_cast<double>(n) + 0.5;
      const auto k = static_cast<Eigen::Index>(std::llround(level));
      if (std::abs(level - static_cast<double>(k)) > 1e-9 || k < 1 || k > n) return false;
      if (seen[static_cast<std::size_t>(k - 1)]) return false;
      seen[static_cast<std::size_t>(k - 1)] = true;
      if (std::abs(x(i, j) + x(n - 1 - i, j) - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace steade::test

#endif  // STEADE_TESTS_SUPPORT_HPP
