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

#ifndef STEADE_SCORING_HPP
#define STEADE_SCORING_HPP

#include "steade/problems.hpp"
#include "steade/record.hpp"

#include <map>
#include <string>
#include <vector>

namespace steade {

// (best_found - f_opt) / (random_baseline_best - f_opt) clipped to [0, 2].
// 0 is optimal, 1 is as good as random search at the same budget. When the
// baseline does not exceed f_opt the score is 0 if best_found <= f_opt and
// 1 otherwise.
double normalized_score(double best_found, double f_opt, double random_baseline_best);

// Median over 30 seeds of the best value found by uniform random search with
// `budget` evaluations. Computed once per (problem, budget) and cached.
double random_search_baseline(const BenchmarkProblem& problem, std::size_t budget);

struct SummaryRow {
  std::string kind;
  double median = 0.0;           // of per-run scores
  double mean = 0.0;             // of per-run scores
  double normalized_mean = 0.0;  // mean over problems of per-problem mean score
  std::size_t n_runs = 0;
};

struct ConvergenceCurve {
  std::vector<double> median;  // per iteration, of best-so-far scores
  std::vector<double> mean;
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::map<std::string, ConvergenceCurve> curves;
  std::size_t iterations = 0;

  const SummaryRow& row(const std::string& kind) const;
};

// Throws std::invalid_argument on an empty set or mixed budgets.
Summary aggregate(const std::vector<RunRecord>& records);

double median(std::vector<double> values);

}  // namespace steade

#endif  // STEADE_SCORING_HPP
