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

#ifndef STEADE_STUDY_HPP
#define STEADE_STUDY_HPP

#include "steade/optimizer.hpp"
#include "steade/problems.hpp"
#include "steade/record.hpp"
#include "steade/scoring.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace steade {

// JSON schema (all keys optional except optimizers/problems/seeds):
//   {"optimizers": ["steade", "de", "rbf", "bo"],
//    "problems": ["sphere", ...] or "all",
//    "seeds": [1, 2, 3],
//    "iterations": 16, "batch": 8,
//    "output_dir": "runs",
//    "time_limit_seconds": 40,
//    "strict_time": false}
struct StudySpec {
  std::vector<std::string> optimizers;
  std::vector<std::string> problems;
  std::vector<std::uint64_t> seeds;
  std::size_t iterations = 16;
  std::size_t batch = 8;
  std::filesystem::path output_dir = "runs";
  double time_limit_seconds = 40.0;
  bool strict_time = false;

  static StudySpec from_json(const nlohmann::json& doc);
  // Checks non-empty lists, known names and iterations >= 1.
  void validate() const;
};

struct RunSettings {
  std::size_t iterations = 16;
  std::size_t batch = 8;
  double time_limit_seconds = 40.0;
  bool strict_time = false;
};

// One full suggest/evaluate/observe loop.
RunRecord run_single(OptimizerKind kind, const BenchmarkProblem& problem, std::uint64_t seed,
                     const RunSettings& settings);

// Worker count from STEADE_WORKERS, else the OpenMP default.
int default_workers();

// Runs every (optimizer, problem, seed) triple. Each run is written to
// <output_dir>/runs/<kind>__<problem>__<seed>.jsonl, then all runs are merged
// in spec order into <output_dir>/records.jsonl.
std::vector<RunRecord> run_study(const StudySpec& spec, int workers = 0);

// CSV with header kind,median,mean,normalized_mean,n_runs.
std::string summary_csv(const Summary& summary);
std::string summary_table(const Summary& summary);

// CSV with header kind,statistic,iteration,value (statistic is median|mean).
std::string convergence_csv(const Summary& summary);

// Two-panel (median, mean) best-so-far chart, one polyline per kind.
std::string convergence_svg(const Summary& summary);

}  // namespace steade

#endif  // STEADE_STUDY_HPP
