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

#include "steade/optimizer.hpp"

#include "steade/design.hpp"
#include "steade/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace steade {
namespace {

constexpr double kDuplicateDistance = 1e-10;

// Stream tags for derive_seed.
enum Stream : std::uint64_t { kDesign = 1, kSuggest = 2, kUnique = 3 };

}  // namespace

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::steade: return "steade";
    case OptimizerKind::de: return "de";
    case OptimizerKind::rbf: return "rbf";
    case OptimizerKind::bo: return "bo";
  }
  return "unknown";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "steade") return OptimizerKind::steade;
  if (name == "de") return OptimizerKind::de;
  if (name == "rbf") return OptimizerKind::rbf;
  if (name == "bo") return OptimizerKind::bo;
  throw std::invalid_argument("unknown optimizer kind '" + std::string(name) + "'");
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::initial_design: return "initial_design";
    case Phase::rbf_phase: return "rbf_phase";
    case Phase::bayesian_phase: return "bayesian_phase";
    case Phase::de_phase: return "de_phase";
    case Phase::bo_phase: return "bo_phase";
  }
  return "unknown";
}

void OptimizerConfig::validate() const {
  DeConfig{population_size, F, Cr}.validate();
  if (batch < 1) throw std::invalid_argument("OptimizerConfig: batch must be >= 1");
  if (lambda < 1) throw std::invalid_argument("OptimizerConfig: lambda must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
  if (srbf_weights.empty()) throw std::invalid_argument("OptimizerConfig: empty SRBF weight cycle");
  for (const double w : srbf_weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("OptimizerConfig: SRBF weight outside [0,1]");
  }
}

Optimizer::Optimizer(ParamSpace space, OptimizerConfig config, OptimizerKind kind)
    : space_(std::move(space)), config_(std::move(config)), kind_(kind), dim_(space_.dimension()) {
  config_.validate();
  Rng rng(derive_seed(config_.seed, {kDesign}));
  design_ = slhd(config_.population_size, dim_, rng);
  const std::size_t budget = config_.batch * config_.max_iterations;
  dycors_ = DycorsState::make(config_.dycors, dim_, std::min(design_.rows(), static_cast<Eigen::Index>(budget)), budget);
  population_.X.resize(0, static_cast<Eigen::Index>(dim_));
  pending_.resize(0, static_cast<Eigen::Index>(dim_));
}

Phase Optimizer::phase_for_next_iteration() const {
  if (design_cursor_ < static_cast<std::size_t>(design_.rows())) return Phase::initial_design;
  switch (kind_) {
    case OptimizerKind::steade:
      return iteration_ + 1 < config_.lambda ? Phase::rbf_phase : Phase::bayesian_phase;
    case OptimizerKind::rbf: return Phase::rbf_phase;
    case OptimizerKind::de: return Phase::de_phase;
    case OptimizerKind::bo: return Phase::bo_phase;
  }
  return Phase::rbf_phase;
}

PointSet Optimizer::suggest() {
  if (has_pending()) throw ProtocolError("suggest called while a batch is pending");
  if (exhausted()) throw ProtocolError("suggest called past max_iterations");
  phase_ = phase_for_next_iteration();
  ++iteration_;
  Rng rng(derive_seed(config_.seed, {kSuggest, iteration_}));

  PointSet batch;
  switch (phase_) {
    case Phase::initial_design: batch = design_batch(); break;
    case Phase::rbf_phase: batch = rbf_batch(config_.batch, rng); break;
    case Phase::bayesian_phase: batch = bayesian_batch(rng); break;
    case Phase::de_phase: batch = de_batch(rng); break;
    case Phase::bo_phase: batch = bo_batch(rng); break;
  }

  Rng unique_rng(derive_seed(config_.seed, {kUnique, iteration_}));
  for (Eigen::Index k = 0; k < batch.rows(); ++k) {
    batch.row(k) = make_unique(batch.row(k).transpose(), batch, k, unique_rng).transpose();
  }
  pending_ = batch;
  return batch;
}

PointSet Optimizer::design_batch() {
  const auto start = static_cast<Eigen::Index>(design_cursor_);
  const Eigen::Index count =
      std::min<Eigen::Index>(static_cast<Eigen::Index>(config_.batch), design_.rows() - start);
  design_cursor_ += static_cast<std::size_t>(count);
  pending_targets_.clear();
  return design_.middleRows(start, count);
}

PointSet Optimizer::random_batch(std::size_t q, Rng& rng) {
  PointSet out(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(dim_));
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = rng.uniform();
  return out;
}

bool Optimizer::refit_rbf() {
  PointSet x(0, static_cast<Eigen::Index>(dim_));
  std::vector<double> y;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < archive_.size(); ++i) {
    if (!archive_[i].failed) rows.push_back(static_cast<Eigen::Index>(i));
  }
  x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& p = archive_[static_cast<std::size_t>(rows[k])];
    x.row(static_cast<Eigen::Index>(k)) = p.x.transpose();
    y.push_back(p.value);
  }
  try {
    rbf_ = fit_rbf(x, y);
    ++rbf_fits_;
    return true;
  } catch (const RbfFitError& e) {
    rbf_.reset();
    events_.push_back("iteration " + std::to_string(iteration_) + ": rbf fit failed (" + e.what() + ")");
    return false;
  }
}

bool Optimizer::refit_gp(Rng& rng) {
  PointSet x(0, static_cast<Eigen::Index>(dim_));
  std::vector<double> y;
  std::size_t finite = 0;
  for (const auto& p : archive_) finite += p.failed ? 0 : 1;
  x.resize(static_cast<Eigen::Index>(finite), static_cast<Eigen::Index>(dim_));
  for (const auto& p : archive_) {
    if (p.failed) continue;
    x.row(static_cast<Eigen::Index>(y.size())) = p.x.transpose();
    y.push_back(p.value);
  }
  GpFitOptions options = config_.gp;
  options.warm_start = last_hyper_;
  try {
    gp_ = fit_gp(x, y, rng, options);
    last_hyper_ = gp_->hyperparameters();
    ++gp_fits_;
    return true;
  } catch (const GpFitError& e) {
    gp_.reset();
    events_.push_back("iteration " + std::to_string(iteration_) + ": gp fit failed (" + e.what() + ")");
    return false;
  }
}

PointSet Optimizer::rbf_batch(std::size_t q, Rng& rng) {
  if (!refit_rbf()) {
    events_.push_back("iteration " + std::to_string(iteration_) + ": random batch in place of rbf");
    return random_batch(q, rng);
  }
  const Vector incumbent = best().first;
  const std::size_t n_cand =
      std::max(std::min(config_.candidates_per_dim * dim_, config_.max_candidates), q);
  const PointSet candidates = dycors_candidates(incumbent, dycors_, archive_.size(), n_cand, rng);
  PointSet evaluated(static_cast<Eigen::Index>(archive_.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < archive_.size(); ++i) {
    evaluated.row(static_cast<Eigen::Index>(i)) = archive_[i].x.transpose();
  }
  std::vector<double> weights(q);
  for (std::size_t k = 0; k < q; ++k) weights[k] = config_.srbf_weights[k % config_.srbf_weights.size()];
  pending_targets_.clear();
  return srbf_select(candidates, *rbf_, evaluated, weights);
}

std::vector<std::size_t> Optimizer::round_robin_targets() const {
  const std::size_t np = config_.population_size;
  const std::size_t start = (iteration_ * config_.batch) % np;
  std::vector<std::size_t> targets(config_.batch);
  for (std::size_t k = 0; k < config_.batch; ++k) targets[k] = (start + k) % np;
  return targets;
}

PointSet Optimizer::bayesian_batch(Rng& rng) {
  if (!refit_gp(rng)) {
    events_.push_back("iteration " + std::to_string(iteration_) +
                      ": bayesian phase fell back to rbf generation");
    return rbf_batch(config_.batch, rng);
  }
  const std::size_t np = config_.population_size;
  const PointSet b = optimize_qei(*gp_, config_.batch, rng, config_.qei);
  const PointSet r = rbf_batch(config_.batch, rng);
  const CandidatePools pools{tile_rows(b, np), tile_rows(r, np)};

  const auto targets = round_robin_targets();
  PointSet out(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t i = targets[k];
    const IndexTriple idx = sample_distinct_indices(np, i, rng);
    const Vector donor = bayesian_mutation(population_, pools, idx, iteration_, config_.F, rng);
    out.row(static_cast<Eigen::Index>(k)) =
        binomial_crossover(population_.X.row(static_cast<Eigen::Index>(i)).transpose(), donor,
                           config_.Cr, rng)
            .transpose();
  }
  pending_targets_ = targets;
  return out;
}

PointSet Optimizer::de_batch(Rng& rng) {
  const std::size_t np = config_.population_size;
  const auto targets = round_robin_targets();
  PointSet out(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t i = targets[k];
    const IndexTriple idx = sample_distinct_indices(np, i, rng);
    const Vector donor = rand1_mutation(population_.X, idx, config_.F);
    out.row(static_cast<Eigen::Index>(k)) =
        binomial_crossover(population_.X.row(static_cast<Eigen::Index>(i)).transpose(), donor,
                           config_.Cr, rng)
            .transpose();
  }
  pending_targets_ = targets;
  return out;
}

PointSet Optimizer::bo_batch(Rng& rng) {
  pending_targets_.clear();
  if (!refit_gp(rng)) {
    events_.push_back("iteration " + std::to_string(iteration_) + ": random batch in place of bo");
    return random_batch(config_.batch, rng);
  }
  return optimize_qei(*gp_, config_.batch, rng, config_.qei);
}

Vector Optimizer::make_unique(Vector x, const PointSet& batch, Eigen::Index filled,
                              Rng& rng) const {
  auto collides = [&](const Vector& p) {
    for (const auto& e : archive_) {
      if (std::sqrt(squared_distance(p, e.x)) <= kDuplicateDistance) return true;
    }
    for (Eigen::Index k = 0; k < filled; ++k) {
      if (std::sqrt(squared_distance(p, batch.row(k))) <= kDuplicateDistance) return true;
    }
    return false;
  };
  const double radius = std::max(dycors_.sigma, 1e-3);
  const Vector origin = x;
  for (int attempt = 0; attempt < 100 && collides(x); ++attempt) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      x[j] = std::clamp(origin[j] + radius * rng.normal(), 0.0, 1.0);
    }
  }
  while (collides(x)) {
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rng.uniform();
  }
  return x;
}

void Optimizer::sync_population_to_archive() {
  std::vector<std::size_t> order(archive_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Best value first; ties prefer the more recent point.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (archive_[a].value != archive_[b].value) return archive_[a].value < archive_[b].value;
    return a > b;
  });
  const std::size_t n = std::min(order.size(), config_.population_size);
  population_.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim_));
  population_.fitness.resize(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    population_.X.row(static_cast<Eigen::Index>(k)) = archive_[order[k]].x.transpose();
    population_.fitness[static_cast<Eigen::Index>(k)] = archive_[order[k]].value;
  }
}

void Optimizer::observe(const PointSet& points, std::span<const double> values) {
  if (!has_pending()) throw ProtocolError("observe called without a pending batch");
  if (points.rows() != pending_.rows() || points.cols() != pending_.cols() ||
      values.size() != static_cast<std::size_t>(points.rows())) {
    throw ProtocolError("observe: point/value count does not match the pending batch");
  }
  if (points != pending_) throw ProtocolError("observe: points differ from the pending batch");
  commit(points, values);
}

void Optimizer::commit(const PointSet& stored, std::span<const double> values) {
  const double before =
      archive_.empty() ? std::numeric_limits<double>::infinity() : best().second;
  double batch_best = std::numeric_limits<double>::infinity();
  std::vector<double> clean(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const bool failed = !std::isfinite(values[k]);
    clean[k] = failed ? std::numeric_limits<double>::infinity() : values[k];
    archive_.push_back({stored.row(static_cast<Eigen::Index>(k)).transpose(), clean[k], iteration_, failed});
    batch_best = std::min(batch_best, clean[k]);
  }

  if (phase_ == Phase::bayesian_phase || phase_ == Phase::de_phase) {
    if (!pending_targets_.empty()) {
      for (std::size_t k = 0; k < pending_targets_.size(); ++k) {
        const auto slot = static_cast<Eigen::Index>(pending_targets_[k]);
        if (trial_wins(population_.fitness[slot], clean[k])) {
          population_.X.row(slot) = stored.row(static_cast<Eigen::Index>(k));
          population_.fitness[slot] = clean[k];
        }
      }
      population_.generation = iteration_ + 1;
    } else {
      sync_population_to_archive();  // bayesian phase fell back to rbf generation
    }
  } else {
    sync_population_to_archive();
  }

  if (phase_ == Phase::rbf_phase || phase_ == Phase::bayesian_phase) {
    dycors_.record(batch_best < before);
  }
  pending_.resize(0, static_cast<Eigen::Index>(dim_));
  pending_targets_.clear();
}

std::vector<Config> Optimizer::suggest_configs() {
  const PointSet batch = suggest();
  std::vector<Config> configs;
  configs.reserve(static_cast<std::size_t>(batch.rows()));
  for (Eigen::Index k = 0; k < batch.rows(); ++k) configs.push_back(space_.unwarp(batch.row(k).transpose()));
  return configs;
}

void Optimizer::observe_configs(const std::vector<Config>& configs, std::span<const double> values) {
  if (!has_pending()) throw ProtocolError("observe called without a pending batch");
  if (configs.size() != static_cast<std::size_t>(pending_.rows()) || values.size() != configs.size()) {
    throw ProtocolError("observe: config/value count does not match the pending batch");
  }
  PointSet stored(pending_.rows(), pending_.cols());
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    if (space_.unwarp(pending_.row(row).transpose()) != configs[k]) {
      throw ProtocolError("observe: config " + std::to_string(k) + " is not the suggested one");
    }
    // Archive the point that was actually evaluated (integer/categorical snapped).
    stored.row(row) = space_.warp(configs[k]).transpose();
  }
  commit(stored, values);
}

std::pair<Vector, double> Optimizer::best() const {
  if (archive_.empty()) throw ProtocolError("best: no observations yet");
  std::size_t at = 0;
  for (std::size_t i = 1; i < archive_.size(); ++i) {
    if (archive_[i].value < archive_[at].value) at = i;
  }
  return {archive_[at].x, archive_[at].value};
}

Config Optimizer::best_config() const { return space_.unwarp(best().first); }

Optimizer init(ParamSpace space, OptimizerConfig config) {
  return Optimizer(std::move(space), std::move(config), OptimizerKind::steade);
}

Optimizer make_optimizer(OptimizerKind kind, ParamSpace space, OptimizerConfig config) {
  return Optimizer(std::move(space), std::move(config), kind);
}

Optimizer make_baseline(OptimizerKind kind, ParamSpace space, OptimizerConfig config) {
  if (kind == OptimizerKind::steade) {
    throw std::invalid_argument("make_baseline: steade is not a baseline kind");
  }
  return Optimizer(std::move(space), std::move(config), kind);
}

Optimizer make_baseline(std::string_view kind, ParamSpace space, OptimizerConfig config) {
  return make_baseline(parse_optimizer_kind(kind), std::move(space), std::move(config));
}

}  // namespace steade
