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

#include "steade/study.hpp"

#include "steade/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace steade {

StudySpec StudySpec::from_json(const nlohmann::json& doc) {
  StudySpec spec;
  spec.optimizers = doc.at("optimizers").get<std::vector<std::string>>();
  const auto& problems = doc.at("problems");
  if (problems.is_string() && problems.get<std::string>() == "all") {
    for (const auto& p : builtin_problems()) spec.problems.push_back(p.name);
  } else {
    spec.problems = problems.get<std::vector<std::string>>();
  }
  spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
  spec.iterations = doc.value("iterations", spec.iterations);
  spec.batch = doc.value("batch", spec.batch);
  spec.output_dir = doc.value("output_dir", spec.output_dir.string());
  spec.time_limit_seconds = doc.value("time_limit_seconds", spec.time_limit_seconds);
  spec.strict_time = doc.value("strict_time", spec.strict_time);
  return spec;
}

void StudySpec::validate() const {
  if (optimizers.empty() || problems.empty() || seeds.empty()) {
    throw std::invalid_argument("study spec needs optimizers, problems and seeds");
  }
  if (iterations < 1 || batch < 1) throw std::invalid_argument("study spec needs iterations, batch >= 1");
  for (const auto& k : optimizers) parse_optimizer_kind(k);
  for (const auto& p : problems) find_problem(p);
}

RunRecord run_single(OptimizerKind kind, const BenchmarkProblem& problem, std::uint64_t seed,
                     const RunSettings& settings) {
  OptimizerConfig config;
  config.batch = settings.batch;
  config.max_iterations = settings.iterations;
  config.seed = derive_seed(seed, {hash_name(problem.name)});
  Optimizer opt = make_optimizer(kind, problem.space(), config);

  RunRecord record;
  record.optimizer = to_string(kind);
  record.problem = problem.name;
  record.seed = seed;
  record.batch = settings.batch;
  record.iterations = settings.iterations;
  record.f_opt = problem.f_opt;
  record.random_baseline = random_search_baseline(problem, record.budget());

  while (!opt.exhausted()) {
    const auto start = std::chrono::steady_clock::now();
    const PointSet batch = opt.suggest();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool late = seconds > settings.time_limit_seconds;
    record.time_limit_exceeded = record.time_limit_exceeded || late;
    if (late && settings.strict_time) {
      // The late batch is never evaluated; the run keeps its best so far.
      record.cut_off = true;
      break;
    }
    IterationRecord it;
    it.suggest_seconds = seconds;
    it.over_time_limit = late;
    std::vector<double> values;
    for (Eigen::Index k = 0; k < batch.rows(); ++k) {
      const Vector native = problem.to_native(batch.row(k).transpose());
      values.push_back(problem.evaluate(native, seed));
      it.points.emplace_back(native.data(), native.data() + native.size());
    }
    opt.observe(batch, values);
    it.values = values;
    record.history.push_back(std::move(it));
  }

  if (!opt.archive().empty()) {
    const auto [x, value] = opt.best();
    const Vector native = problem.to_native(x);
    record.best_point.assign(native.data(), native.data() + native.size());
    record.best_value = value;
    record.best_noise_free = problem.evaluate_noise_free(native);
  } else {
    record.best_value = std::numeric_limits<double>::infinity();
    record.best_noise_free = std::numeric_limits<double>::infinity();
  }
  return record;
}

int default_workers() {
  if (const char* env = std::getenv("STEADE_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

std::vector<RunRecord> run_study(const StudySpec& spec, int workers) {
  spec.validate();
  const auto runs_dir = spec.output_dir / "runs";
  std::error_code ec;
  std::filesystem::create_directories(runs_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + runs_dir.string() + ": " + ec.message());

  struct Job {
    OptimizerKind kind;
    std::string problem;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& k : spec.optimizers) {
    for (const auto& p : spec.problems) {
      for (const auto s : spec.seeds) jobs.push_back({parse_optimizer_kind(k), p, s});
    }
  }
  const RunSettings settings{spec.iterations, spec.batch, spec.time_limit_seconds, spec.strict_time};
  std::vector<RunRecord> records(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const int threads = workers > 0 ? workers : default_workers();
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto& job = jobs[static_cast<std::size_t>(j)];
    try {
      auto& rec = records[static_cast<std::size_t>(j)];
      rec = run_single(job.kind, find_problem(job.problem), job.seed, settings);
      write_records(runs_dir / (rec.optimizer + "__" + rec.problem + "__" + std::to_string(rec.seed) + ".jsonl"),
                    {rec});
    } catch (...) {
      errors[static_cast<std::size_t>(j)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  write_records(spec.output_dir / "records.jsonl", records);
  return records;
}

}  // namespace steade
