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

#include "steade/scoring.hpp"

#include "steade/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace steade {

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double normalized_score(double best_found, double f_opt, double random_baseline_best) {
  if (!(random_baseline_best > f_opt)) return best_found <= f_opt ? 0.0 : 1.0;
  const double s = (best_found - f_opt) / (random_baseline_best - f_opt);
  if (std::isnan(s)) return 2.0;
  return std::clamp(s, 0.0, 2.0);
}

double random_search_baseline(const BenchmarkProblem& problem, std::size_t budget) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, std::size_t>, double> cache;
  const auto key = std::make_pair(problem.name, budget);
  {
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }
  constexpr std::size_t kSeeds = 30;
  const std::uint64_t tag = hash_name(problem.name);
  std::vector<double> bests;
  for (std::size_t s = 0; s < kSeeds; ++s) {
    Rng rng(derive_seed(0x72616e646f6dULL, {tag, s}));
    double best = std::numeric_limits<double>::infinity();
    Vector cube(static_cast<Eigen::Index>(problem.dimension()));
    for (std::size_t k = 0; k < budget; ++k) {
      for (Eigen::Index j = 0; j < cube.size(); ++j) cube[j] = rng.uniform();
      best = std::min(best, problem.evaluate(problem.to_native(cube), s));
    }
    bests.push_back(best);
  }
  const double value = median(bests);
  std::lock_guard lock(mutex);
  cache.emplace(key, value);
  return value;
}

const SummaryRow& Summary::row(const std::string& kind) const {
  for (const auto& r : rows) {
    if (r.kind == kind) return r;
  }
  throw std::out_of_range("no summary row for '" + kind + "'");
}

Summary aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  const std::size_t batch = records.front().batch;
  const std::size_t iterations = records.front().iterations;
  for (const auto& r : records) {
    if (r.batch != batch || r.iterations != iterations) {
      throw std::invalid_argument("aggregate: records have mixed budgets");
    }
  }

  // Canonical kinds first, anything else alphabetically after them.
  const std::vector<std::string> canonical{"steade", "de", "rbf", "bo"};
  std::vector<std::string> kinds;
  for (const auto& k : canonical) {
    if (std::any_of(records.begin(), records.end(), [&](const RunRecord& r) { return r.optimizer == k; })) {
      kinds.push_back(k);
    }
  }
  std::vector<std::string> others;
  for (const auto& r : records) {
    if (std::find(canonical.begin(), canonical.end(), r.optimizer) == canonical.end() &&
        std::find(others.begin(), others.end(), r.optimizer) == others.end()) {
      others.push_back(r.optimizer);
    }
  }
  std::sort(others.begin(), others.end());
  kinds.insert(kinds.end(), others.begin(), others.end());

  Summary summary;
  summary.iterations = iterations;
  for (const auto& kind : kinds) {
    std::vector<double> scores;
    std::map<std::string, std::vector<double>> by_problem;
    std::vector<std::vector<double>> per_iteration(iterations);
    for (const auto& r : records) {
      if (r.optimizer != kind) continue;
      const double s = r.score();
      scores.push_back(s);
      by_problem[r.problem].push_back(s);
      const auto curve = r.score_curve();
      for (std::size_t i = 0; i < iterations; ++i) per_iteration[i].push_back(curve[i]);
    }
    SummaryRow row;
    row.kind = kind;
    row.n_runs = scores.size();
    row.median = median(scores);
    row.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    double balanced = 0.0;
    for (const auto& [problem, s] : by_problem) {
      balanced += std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    }
    row.normalized_mean = balanced / static_cast<double>(by_problem.size());
    summary.rows.push_back(row);

    ConvergenceCurve curve;
    for (auto& values : per_iteration) {
      curve.mean.push_back(std::accumulate(values.begin(), values.end(), 0.0) /
                           static_cast<double>(values.size()));
      curve.median.push_back(median(values));
    }
    summary.curves.emplace(kind, std::move(curve));
  }
  return summary;
}

}  // namespace steade
