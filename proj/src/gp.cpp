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

#include "steade/gp.hpp"

#include "steade/kernels.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace steade {
namespace {

constexpr double kVarianceFloor = 1e-12;

struct Standardized {
  Vector y;
  double mean;
  double std;
};

Standardized standardize(std::span<const double> values) {
  const auto m = static_cast<Eigen::Index>(values.size());
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) y[i] = values[static_cast<std::size_t>(i)];
  const double mean = y.mean();
  const double var = m > 1 ? (y.array() - mean).square().sum() / static_cast<double>(m) : 0.0;
  const double sd = std::sqrt(std::max(var, kVarianceFloor));
  return {(y.array() - mean) / sd, mean, sd};
}

Vector inverse_lengthscale(const GpHyperparameters& h) {
  return (-h.log_lengthscale.array()).exp();
}

Vector clamp_theta(Vector theta, const Vector& lo, const Vector& hi) {
  return theta.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

Vector GpHyperparameters::pack() const {
  const Eigen::Index d = log_lengthscale.size();
  Vector theta(d + 2);
  theta.head(d) = log_lengthscale;
  theta[d] = log_signal_var;
  theta[d + 1] = log_noise_var;
  return theta;
}

GpHyperparameters GpHyperparameters::unpack(const Vector& theta) {
  const Eigen::Index d = theta.size() - 2;
  return {theta.head(d), theta[d], theta[d + 1]};
}

namespace {

// Pairwise squared coordinate differences for the strict upper triangle,
// shared by every likelihood evaluation of one fit.
class PairTable {
 public:
  explicit PairTable(const PointSet& x) : m_(x.rows()), dim_(x.cols()) {
    diff2_.resize(m_ * (m_ - 1) / 2, dim_);
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index k = i + 1; k < m_; ++k, ++p) {
        diff2_.row(p) = (x.row(i) - x.row(k)).array().square();
      }
    }
  }

  double log_likelihood(const Vector& y, const GpHyperparameters& hyper, Vector* grad) const {
    static const double sqrt5 = std::sqrt(5.0);
    const double signal = std::exp(hyper.log_signal_var);
    const double noise = std::exp(hyper.log_noise_var);
    const Eigen::ArrayXd inv_ls2 = (-2.0 * hyper.log_lengthscale.array()).exp();

    // Scaled squared distances, then the kernel matrix.
    const Eigen::VectorXd r2 = diff2_ * inv_ls2.matrix();
    Eigen::MatrixXd k(m_, m_);
    Eigen::VectorXd shape(r2.size());  // (5/3)(1 + sqrt5 r) exp(-sqrt5 r)
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      k(i, i) = signal + noise;
      for (Eigen::Index c = i + 1; c < m_; ++c, ++p) {
        const double r = std::sqrt(r2[p]);
        const double e = std::exp(-sqrt5 * r);
        k(i, c) = k(c, i) = signal * (1.0 + sqrt5 * r + (5.0 / 3.0) * r2[p]) * e;
        shape[p] = (5.0 / 3.0) * (1.0 + sqrt5 * r) * e;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    const Vector alpha = llt.solve(y);
    const double log_det_half = llt.matrixLLT().diagonal().array().log().sum();
    const double ll = -0.5 * y.dot(alpha) - log_det_half -
                      0.5 * static_cast<double>(m_) * std::log(2.0 * std::numbers::pi);
    if (!std::isfinite(ll)) return -std::numeric_limits<double>::infinity();
    if (grad == nullptr) return ll;

    // dL/dtheta = 1/2 tr((alpha alpha^T - K^{-1}) dK/dtheta); W is symmetric,
    // so each strict-upper pair counts twice.
    Eigen::MatrixXd w = -llt.solve(Eigen::MatrixXd::Identity(m_, m_));
    w.noalias() += alpha * alpha.transpose();
    Eigen::VectorXd pair_weight(r2.size());
    double signal_term = 0.0;
    p = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      signal_term += 0.5 * w(i, i) * signal;
      for (Eigen::Index c = i + 1; c < m_; ++c, ++p) {
        pair_weight[p] = w(i, c) * signal * shape[p];
        signal_term += w(i, c) * (k(i, c));
      }
    }
    grad->resize(dim_ + 2);
    // dk/dlog l_d = s^2 (5/3)(1 + sqrt5 r) exp(-sqrt5 r) dx_d^2 / l_d^2
    grad->head(dim_) = (diff2_.transpose() * pair_weight).array() * inv_ls2;
    (*grad)[dim_] = signal_term;
    (*grad)[dim_ + 1] = 0.5 * noise * w.trace();
    return ll;
  }

 private:
  Eigen::Index m_;
  Eigen::Index dim_;
  Eigen::MatrixXd diff2_;
};

}  // namespace

double gp_log_likelihood(const PointSet& x, const Vector& y, const GpHyperparameters& hyper,
                         Vector* grad) {
  return PairTable(x).log_likelihood(y, hyper, grad);
}

namespace {

// Projected L-BFGS on -log L inside the box [lo, hi]. Returns the final
// log-likelihood and updates theta in place.
double maximize_likelihood(const PairTable& table, const Vector& y, Vector& theta, const Vector& lo,
                           const Vector& hi, const GpFitOptions& options) {
  constexpr std::size_t kMemory = 6;
  auto eval = [&](const Vector& t, Vector& g) {
    const double ll = table.log_likelihood(y, GpHyperparameters::unpack(t), &g);
    if (std::isfinite(ll)) g = -g;
    return -ll;
  };
  auto blocked = [&](const Vector& t, Eigen::Index j, double descent) {
    return (t[j] <= lo[j] && descent < 0.0) || (t[j] >= hi[j] && descent > 0.0);
  };

  Vector g;
  double f = eval(theta, g);
  if (!std::isfinite(f)) return -std::numeric_limits<double>::infinity();
  std::vector<Vector> s_hist;
  std::vector<Vector> y_hist;
  for (std::size_t it = 0; it < options.max_steps; ++it) {
    Vector pg = g;
    for (Eigen::Index j = 0; j < pg.size(); ++j) {
      if (blocked(theta, j, -pg[j])) pg[j] = 0.0;
    }
    if (pg.lpNorm<Eigen::Infinity>() < 1e-9) break;

    // Two-loop recursion.
    Vector d = pg;
    std::vector<double> a(s_hist.size());
    for (std::size_t h = s_hist.size(); h-- > 0;) {
      a[h] = s_hist[h].dot(d) / y_hist[h].dot(s_hist[h]);
      d -= a[h] * y_hist[h];
    }
    if (!s_hist.empty()) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      const double b = y_hist[h].dot(d) / y_hist[h].dot(s_hist[h]);
      d += (a[h] - b) * s_hist[h];
    }
    d = -d;
    for (Eigen::Index j = 0; j < d.size(); ++j) {
      if (blocked(theta, j, d[j])) d[j] = 0.0;
    }
    if (!(d.dot(pg) < 0.0)) {
      d = -pg;
      s_hist.clear();
      y_hist.clear();
    }

    double step = s_hist.empty() ? std::min(1.0, 1.0 / pg.norm()) : 1.0;
    bool accepted = false;
    Vector next;
    Vector g_next;
    double f_next = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt, step *= 0.5) {
      next = clamp_theta(theta + step * d, lo, hi);
      f_next = eval(next, g_next);
      if (std::isfinite(f_next) && f_next <= f + 1e-4 * g.dot(next - theta)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const Vector s_step = next - theta;
    const Vector y_step = g_next - g;
    const double gain = f - f_next;
    theta = next;
    f = f_next;
    g = g_next;
    if (s_step.dot(y_step) > 1e-10) {
      s_hist.push_back(s_step);
      y_hist.push_back(y_step);
      if (s_hist.size() > kMemory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
      }
    }
    if (gain < options.tolerance) break;
  }
  return -f;
}

}  // namespace

double GpModel::signal_variance() const {
  return std::exp(hyper_.log_signal_var) * y_std_ * y_std_;
}

double GpModel::best_value() const { return train_y_.minCoeff() * y_std_ + y_mean_; }

Vector GpModel::best_point() const {
  Eigen::Index at = 0;
  train_y_.minCoeff(&at);
  return train_x_.row(at).transpose();
}

GpPosterior GpModel::posterior(const PointSet& query, Exec exec) const {
  if (query.cols() != train_x_.cols()) throw std::invalid_argument("gp_posterior: dimension mismatch");
  const Vector inv_ls = inverse_lengthscale(hyper_);
  const double signal = std::exp(hyper_.log_signal_var);
  Eigen::MatrixXd k_qx;
  Eigen::MatrixXd k_qq;
  if (exec == Exec::parallel) {
    kernels::matern52_cross_parallel(query, train_x_, inv_ls, signal, k_qx);
  } else {
    kernels::matern52_cross_serial(query, train_x_, inv_ls, signal, k_qx);
  }
  kernels::matern52_cross_serial(query, query, inv_ls, signal, k_qq);

  GpPosterior out;
  out.mean = (k_qx * alpha_).array() * y_std_ + y_mean_;
  const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(k_qx.transpose());
  out.cov = k_qq;
  out.cov.noalias() -= v.transpose() * v;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  for (Eigen::Index i = 0; i < out.cov.rows(); ++i) {
    out.cov(i, i) = std::max(out.cov(i, i), 0.0);
  }
  out.cov *= y_std_ * y_std_;
  return out;
}

GpPosterior GpModel::posterior(const Vector& x) const {
  PointSet q = x.transpose();
  return posterior(q, Exec::serial);
}

GpModel condition_gp(const PointSet& points, std::span<const double> values,
                     const GpHyperparameters& hyper) {
  if (static_cast<std::size_t>(points.rows()) != values.size()) {
    throw GpFitError("fit_gp: point/value count mismatch");
  }
  if (hyper.log_lengthscale.size() != points.cols()) {
    throw GpFitError("fit_gp: lengthscale dimension mismatch");
  }
  GpModel model;
  const auto standardized = standardize(values);
  model.train_x_ = points;
  model.train_y_ = standardized.y;
  model.y_mean_ = standardized.mean;
  model.y_std_ = standardized.std;
  model.hyper_ = hyper;

  Eigen::MatrixXd k;
  kernels::matern52_cross_parallel(points, points, inverse_lengthscale(hyper),
                                   std::exp(hyper.log_signal_var), k);
  k.diagonal().array() += std::exp(hyper.log_noise_var);
  for (double jitter = 0.0; jitter <= 1e-4 * 1.0001; jitter = jitter == 0.0 ? 1e-8 : jitter * 10) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() != Eigen::Success) continue;
    model.chol_ = llt.matrixL();
    model.alpha_ = llt.solve(model.train_y_);
    if (!model.alpha_.allFinite()) continue;
    model.jitter_ = jitter;
    return model;
  }
  throw GpFitError("fit_gp: kernel matrix not positive definite after jitter 1e-4");
}

GpModel fit_gp(const PointSet& points, std::span<const double> values, Rng& rng,
               const GpFitOptions& options) {
  const Eigen::Index total = points.rows();
  if (total < 2) throw GpFitError("fit_gp: need at least 2 points");
  if (static_cast<std::size_t>(total) != values.size()) {
    throw GpFitError("fit_gp: point/value count mismatch");
  }
  // Keep the most recent max_points observations.
  const Eigen::Index m = std::min<Eigen::Index>(total, static_cast<Eigen::Index>(options.max_points));
  const PointSet x = points.bottomRows(m);
  const auto y_values = values.subspan(static_cast<std::size_t>(total - m));
  const Vector y = standardize(y_values).y;
  const Eigen::Index dim = x.cols();

  Vector lo(dim + 2);
  Vector hi(dim + 2);
  lo.head(dim).setConstant(std::log(options.min_lengthscale));
  hi.head(dim).setConstant(std::log(options.max_lengthscale));
  lo[dim] = std::log(options.min_signal_var);
  hi[dim] = std::log(options.max_signal_var);
  lo[dim + 1] = std::log(options.min_noise_var);
  hi[dim + 1] = std::log(options.max_noise_var);

  const PairTable table(x);
  Vector best_theta;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart < std::max<std::size_t>(options.restarts, 1); ++restart) {
    Vector theta(dim + 2);
    if (restart == 0 && options.warm_start && options.warm_start->log_lengthscale.size() == dim) {
      theta = options.warm_start->pack();
    } else if (restart == 0) {
      theta.head(dim).setConstant(std::log(0.3));
      theta[dim] = 0.0;
      theta[dim + 1] = std::log(1e-4);
    } else {
      for (Eigen::Index j = 0; j < dim; ++j) theta[j] = rng.uniform(std::log(0.05), std::log(2.0));
      theta[dim] = rng.uniform(std::log(0.5), std::log(2.0));
      theta[dim + 1] = rng.uniform(std::log(1e-6), std::log(1e-2));
    }
    theta = clamp_theta(theta, lo, hi);
    const double ll = maximize_likelihood(table, y, theta, lo, hi, options);
    if (ll > best_ll) {
      best_ll = ll;
      best_theta = theta;
    }
  }
  if (best_theta.size() == 0) {
    best_theta = Vector(dim + 2);
    best_theta.head(dim).setConstant(std::log(0.3));
    best_theta[dim] = 0.0;
    best_theta[dim + 1] = std::log(1e-4);
    best_theta = clamp_theta(best_theta, lo, hi);
  }
  return condition_gp(x, y_values, GpHyperparameters::unpack(best_theta));
}

}  // namespace steade
