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

#ifndef STEADE_OPTIMIZER_HPP
#define STEADE_OPTIMIZER_HPP

#include "steade/common.hpp"
#include "steade/de.hpp"
#include "steade/gp.hpp"
#include "steade/qei.hpp"
#include "steade/rbf.hpp"
#include "steade/space.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace steade {

enum class OptimizerKind { steade, de, rbf, bo };

std::string to_string(OptimizerKind kind);
// Accepts "steade", "de", "rbf", "bo". Throws std::invalid_argument otherwise.
OptimizerKind parse_optimizer_kind(std::string_view name);

enum class Phase { initial_design, rbf_phase, bayesian_phase, de_phase, bo_phase };

std::string to_string(Phase phase);

struct OptimizerConfig {
  std::size_t population_size = 16;
  double F = 0.7;
  double Cr = 0.7;
  std::size_t lambda = 10;
  std::size_t batch = 8;
  std::size_t max_iterations = 16;
  std::uint64_t seed = 0;

  DycorsConfig dycors;
  std::vector<double> srbf_weights{0.3, 0.5, 0.8, 0.95};
  std::size_t candidates_per_dim = 100;
  std::size_t max_candidates = 5000;
  GpFitOptions gp;
  QeiOptions qei;

  void validate() const;
};

struct EvaluatedPoint {
  Vector x;
  double value;  // +inf when the evaluation failed
  std::size_t iteration;
  bool failed = false;
};

// Misuse of the suggest/observe protocol.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Batch suggest/observe optimizer over the unit cube of a ParamSpace.
//
// The steade kind runs the initial symmetric LHS design, then SRBF/DYCORS
// batches while G < lambda, then the Bayesian-mutation DE phase. The de, rbf
// and bo kinds are the single-component baselines behind the same protocol.
class Optimizer {
 public:
  Optimizer(ParamSpace space, OptimizerConfig config, OptimizerKind kind = OptimizerKind::steade);

  // Next batch of unit-cube points. Increments the iteration counter G.
  PointSet suggest();
  // Values for exactly the pending batch, in suggestion order. NaN marks a
  // failed evaluation.
  void observe(const PointSet& points, std::span<const double> values);

  std::vector<Config> suggest_configs();
  void observe_configs(const std::vector<Config>& configs, std::span<const double> values);

  // Archive-wide minimum.
  std::pair<Vector, double> best() const;
  Config best_config() const;

  OptimizerKind kind() const { return kind_; }
  const OptimizerConfig& config() const { return config_; }
  const ParamSpace& space() const { return space_; }
  std::size_t iteration() const { return iteration_; }
  Phase phase() const { return phase_; }
  bool exhausted() const { return iteration_ >= config_.max_iterations; }
  bool has_pending() const { return pending_.rows() > 0; }
  const PointSet& pending() const { return pending_; }
  const std::vector<std::size_t>& pending_targets() const { return pending_targets_; }
  const PointSet& initial_design() const { return design_; }
  const std::vector<EvaluatedPoint>& archive() const { return archive_; }
  const Population& population() const { return population_; }
  const DycorsState& dycors() const { return dycors_; }
  const std::optional<RbfModel>& rbf() const { return rbf_; }
  const std::optional<GpModel>& gp() const { return gp_; }
  std::size_t rbf_fits() const { return rbf_fits_; }
  std::size_t gp_fits() const { return gp_fits_; }
  const std::vector<std::string>& events() const { return events_; }

 private:
  Phase phase_for_next_iteration() const;
  PointSet design_batch();
  PointSet rbf_batch(std::size_t q, Rng& rng);
  PointSet bayesian_batch(Rng& rng);
  PointSet de_batch(Rng& rng);
  PointSet bo_batch(Rng& rng);
  PointSet random_batch(std::size_t q, Rng& rng);
  std::vector<std::size_t> round_robin_targets() const;
  bool refit_rbf();
  bool refit_gp(Rng& rng);
  Vector make_unique(Vector x, const PointSet& batch, Eigen::Index filled, Rng& rng) const;
  void sync_population_to_archive();
  void commit(const PointSet& stored, std::span<const double> values);

  ParamSpace space_;
  OptimizerConfig config_;
  OptimizerKind kind_;
  std::size_t dim_;

  PointSet design_;
  std::size_t design_cursor_ = 0;
  std::size_t iteration_ = 0;
  Phase phase_ = Phase::initial_design;

  std::vector<EvaluatedPoint> archive_;
  Population population_;
  PointSet pending_;
  std::vector<std::size_t> pending_targets_;
  DycorsState dycors_;
  std::optional<RbfModel> rbf_;
  std::optional<GpModel> gp_;
  std::optional<GpHyperparameters> last_hyper_;
  std::size_t rbf_fits_ = 0;
  std::size_t gp_fits_ = 0;
  std::vector<std::string> events_;
};

// Hybrid optimizer with the default schedule.
Optimizer init(ParamSpace space, OptimizerConfig config);

// Any of the four kinds.
Optimizer make_optimizer(OptimizerKind kind, ParamSpace space, OptimizerConfig config);

// Single-component baselines: de, rbf or bo. Throws std::invalid_argument for
// any other kind.
Optimizer make_baseline(OptimizerKind kind, ParamSpace space, OptimizerConfig config);
Optimizer make_baseline(std::string_view kind, ParamSpace space, OptimizerConfig config);

}  // namespace steade

#endif  // STEADE_OPTIMIZER_HPP
