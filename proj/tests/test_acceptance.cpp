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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "steade/design.hpp"
#include "steade/de.hpp"
#include "steade/gp.hpp"
#include "steade/optimizer.hpp"
#include "steade/qei.hpp"
#include "steade/rbf.hpp"
#include "steade/record.hpp"
#include "steade/scoring.hpp"
#include "steade/study.hpp"
#include "support.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace steade;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointSet random_points(Eigen::Index m, Eigen::Index d, Rng& rng) {
  PointSet x(m, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  return x;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<RunRecord> strip_clock(std::vector<RunRecord> records) {
  for (auto& r : records) {
    for (auto& it : r.history) it.suggest_seconds = 0.0;
  }
  return records;
}

std::string archive_text(const std::vector<RunRecord>& records) {
  std::string out;
  for (const auto& r : strip_clock(records)) out += to_json(r).dump() + "\n";
  return out;
}

StudySpec ablation_spec(const fs::path& dir) {
  StudySpec spec;
  spec.optimizers = {"steade", "de", "rbf", "bo"};
  for (const auto& p : builtin_problems()) spec.problems.push_back(p.name);
  for (std::uint64_t s = 1; s <= 15; ++s) spec.seeds.push_back(s);
  spec.output_dir = dir;
  return spec;
}

// Shared by the ablation, convergence and budget criteria.
struct Ablation {
  std::vector<RunRecord> records;
  Summary summary;
  double seconds = 0.0;
};

// 1. STEADE mean normalized score below DE and within 5% of the better of RBF and BO.
Outcome ablation_direction(const Ablation& a) {
  const double steade = a.summary.row("steade").normalized_mean;
  const double de = a.summary.row("de").normalized_mean;
  const double rbf = a.summary.row("rbf").normalized_mean;
  const double bo = a.summary.row("bo").normalized_mean;
  const double best_surrogate = std::min(rbf, bo);
  Outcome o;
  o.pass = a.records.size() == 480 && steade < de && steade <= 1.05 * best_surrogate;
  o.detail = "runs " + std::to_string(a.records.size()) + ", steade " + fmt("%.5f", steade) + ", de " +
             fmt("%.5f", de) + ", rbf " + fmt("%.5f", rbf) + ", bo " + fmt("%.5f", bo) + ", wall " +
             fmt("%.0f s", a.seconds);
  return o;
}

// 2. DE's median best-so-far score is strictly higher than each surrogate
// method's at iteration 9.
Outcome convergence_shape(const Ablation& a) {
  const auto at = [&](const std::string& kind, std::size_t g) { return a.summary.curves.at(kind).median.at(g - 1); };
  Outcome o;
  o.pass = true;
  std::size_t lagging = 0;
  for (std::size_t g = 3; g <= 9; ++g) {
    bool behind = true;
    for (const char* kind : {"steade", "rbf", "bo"}) behind = behind && at("de", g) > at(kind, g);
    lagging += behind ? 1 : 0;
  }
  for (const char* kind : {"steade", "rbf", "bo"}) o.pass = o.pass && at("de", 9) > at(kind, 9);
  o.detail = "iteration 9 medians: de " + fmt("%.4f", at("de", 9)) + ", steade " + fmt("%.4f", at("steade", 9)) +
             ", rbf " + fmt("%.4f", at("rbf", 9)) + ", bo " + fmt("%.4f", at("bo", 9)) + "; de behind all at " +
             std::to_string(lagging) + " of iterations 3-9";
  return o;
}

// 3. Interpolation at the centers, constant and linear reproduction.
Outcome rbf_interpolation() {
  Rng rng(derive_seed(3, {0}));
  double max_residual = 0.0;
  double max_poly = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index d = std::array<Eigen::Index, 3>{2, 5, 8}[static_cast<std::size_t>(k % 3)];
    const PointSet x = random_points(3 * d, d, rng);
    std::vector<double> f;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      f.push_back(std::sin(3.0 * x(i, 0)) + x.row(i).squaredNorm() + rng.normal());
    }
    const RbfModel model = fit_rbf(x, f);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      max_residual = std::max(max_residual, std::abs(model.predict(Vector(x.row(i).transpose())) - f[static_cast<std::size_t>(i)]));
    }
    const double c = rng.uniform(-5.0, 5.0);
    const Vector slope = Vector::NullaryExpr(d, [&] { return rng.uniform(-3.0, 3.0); });
    std::vector<double> constant(static_cast<std::size_t>(x.rows()), c);
    std::vector<double> linear;
    for (Eigen::Index i = 0; i < x.rows(); ++i) linear.push_back(c + x.row(i).dot(slope));
    const RbfModel mc = fit_rbf(x, constant);
    const RbfModel ml = fit_rbf(x, linear);
    for (int h = 0; h < 20; ++h) {
      const Vector q = random_points(1, d, rng).row(0).transpose();
      max_poly = std::max(max_poly, std::abs(mc.predict(q) - c));
      max_poly = std::max(max_poly, std::abs(ml.predict(q) - (c + q.dot(slope))));
    }
  }
  return {max_residual < 1e-8 && max_poly < 1e-6,
          "max center residual " + fmt("%.2e", max_residual) + ", max held-out polynomial error " + fmt("%.2e", max_poly)};
}

// 4. q = 1 qEI against closed-form EI on 20 triples.
Outcome qei_oracle() {
  const auto t0 = Clock::now();
  const QmcSampler sampler(1, 4096, 4);
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(derive_seed(4, {k}));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(k % 4);
    const PointSet x = random_points(12 + static_cast<Eigen::Index>(k), d, rng);
    std::vector<double> y;
    for (Eigen::Index i = 0; i < x.rows(); ++i) y.push_back(std::cos(5.0 * x(i, 0)) + x(i, d - 1));
    const GpModel model = fit_gp(x, y, rng);
    const PointSet query = random_points(1, d, rng);
    const GpPosterior post = model.posterior(query);
    const double sigma = std::sqrt(post.cov(0, 0) + 1e-12 * model.signal_variance());
    const double f_star = post.mean[0] + rng.uniform(-2.0, 2.0) * sigma;
    const double exact = test::analytic_ei(post.mean[0], sigma, f_star);
    const double rel = std::abs(qei(model, query, f_star, sampler) - exact) / exact;
    worst = std::max(worst, rel);
    within += rel <= 0.02 ? 1 : 0;
  }
  const double elapsed = seconds_since(t0);
  return {within >= 19 && elapsed < 10.0, std::to_string(within) + "/20 within 2%, worst relative error " +
                                              fmt("%.2e", worst) + ", " + fmt("%.2f s", elapsed)};
}

// 5. Interpolation at the noise floor and the likelihood gradient.
Outcome gp_correctness() {
  double max_residual = 0.0;
  double max_grad = 0.0;
  for (std::uint64_t k = 0; k < 5; ++k) {
    Rng rng(derive_seed(5, {k}));
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(k % 3);
    const PointSet x = random_points(20, d, rng);
    std::vector<double> y;
    for (Eigen::Index i = 0; i < x.rows(); ++i) y.push_back(3.0 * std::sin(4.0 * x(i, 0)) + x.row(i).squaredNorm());
    GpFitOptions options;
    options.max_noise_var = options.min_noise_var;
    const GpModel model = fit_gp(x, y, rng, options);
    const GpPosterior post = model.posterior(x, Exec::serial);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      max_residual = std::max(max_residual, std::abs(post.mean[i] - y[static_cast<std::size_t>(i)]));
    }

    Vector ys = Eigen::Map<const Vector>(y.data(), x.rows());
    ys = (ys.array() - ys.mean()) / std::sqrt((ys.array() - ys.mean()).square().mean());
    GpHyperparameters h;
    h.log_lengthscale = Vector::NullaryExpr(d, [&] { return rng.uniform(std::log(0.1), std::log(1.0)); });
    h.log_signal_var = rng.uniform(-0.5, 0.5);
    h.log_noise_var = rng.uniform(std::log(1e-4), std::log(1e-2));
    Vector grad;
    gp_log_likelihood(x, ys, h, &grad);
    const Vector theta = h.pack();
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      Vector up = theta;
      Vector down = theta;
      up[j] += 1e-5;
      down[j] -= 1e-5;
      const double fd = (gp_log_likelihood(x, ys, GpHyperparameters::unpack(up)) -
                         gp_log_likelihood(x, ys, GpHyperparameters::unpack(down))) / 2e-5;
      max_grad = std::max(max_grad, std::abs(grad[j] - fd) / std::max(std::abs(fd), 1e-3));
    }
  }
  return {max_residual < 1e-4 && max_grad < 1e-4,
          "max training residual " + fmt("%.2e", max_residual) + ", max gradient relative error " + fmt("%.2e", max_grad)};
}

// 6. Inherited-gene count histogram of binomial crossover.
Outcome crossover_distribution() {
  const std::size_t dim = 10;
  Rng rng(derive_seed(6, {0}));
  std::vector<double> observed(dim + 1, 0.0);
  const Vector x = Vector::Zero(static_cast<Eigen::Index>(dim));
  const Vector v = Vector::Ones(static_cast<Eigen::Index>(dim));
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) observed[static_cast<std::size_t>(binomial_crossover(x, v, 0.7, rng).sum())] += 1.0;
  std::vector<double> expected = test::crossover_count_law(dim, 0.7);
  for (double& e : expected) e *= trials;
  // Pool the sparse low-count bins so every expected count is at least 5.
  std::vector<double> obs_pooled{0.0};
  std::vector<double> exp_pooled{0.0};
  for (std::size_t k = 0; k <= dim; ++k) {
    obs_pooled.back() += observed[k];
    exp_pooled.back() += expected[k];
    if (exp_pooled.back() >= 5.0 && k < dim) {
      obs_pooled.push_back(0.0);
      exp_pooled.push_back(0.0);
    }
  }
  if (exp_pooled.back() < 5.0 && exp_pooled.size() > 1) {
    exp_pooled[exp_pooled.size() - 2] += exp_pooled.back();
    obs_pooled[obs_pooled.size() - 2] += obs_pooled.back();
    exp_pooled.pop_back();
    obs_pooled.pop_back();
  }
  const auto chi = test::chi_square(obs_pooled, exp_pooled);
  return {chi.p_value > 0.01, "chi-square " + fmt("%.3f", chi.statistic) + " on " +
                                  std::to_string(chi.dof) + " dof, p " + fmt("%.4f", chi.p_value)};
}

bool throws_protocol(const std::function<void()>& f) {
  try {
    f();
  } catch (const ProtocolError&) {
    return true;
  }
  return false;
}

// 7. Budget, alternation, the lambda switch and suggest time.
Outcome budget_protocol(const Ablation& a) {
  std::vector<std::string> problems;
  bool budget = true;
  double max_suggest = 0.0;
  for (const auto& r : a.records) {
    budget = budget && r.evaluations() == 128 && !r.cut_off;
    for (const auto& it : r.history) max_suggest = std::max(max_suggest, it.suggest_seconds);
  }
  std::size_t dim_max = 0;
  for (const auto& p : builtin_problems()) dim_max = std::max(dim_max, p.dimension());

  bool alternation = true;
  bool lambda_switch = true;
  for (OptimizerKind kind : {OptimizerKind::steade, OptimizerKind::de, OptimizerKind::rbf, OptimizerKind::bo}) {
    const BenchmarkProblem& problem = find_problem("branin");
    OptimizerConfig config;
    config.seed = 7;
    Optimizer opt = make_optimizer(kind, problem.space(), config);
    alternation = alternation && throws_protocol([&] { opt.observe(PointSet(0, 2), std::vector<double>{}); });
    std::size_t evaluations = 0;
    std::vector<Phase> phases;
    while (!opt.exhausted()) {
      const PointSet batch = opt.suggest();
      phases.push_back(opt.phase());
      alternation = alternation && throws_protocol([&] { opt.suggest(); });
      alternation = alternation && throws_protocol([&] { opt.observe(batch.topRows(batch.rows() - 1), std::vector<double>(batch.rows() - 1, 0.0)); });
      std::vector<double> values;
      for (Eigen::Index i = 0; i < batch.rows(); ++i) values.push_back(problem.evaluate(problem.to_native(batch.row(i).transpose())));
      opt.observe(batch, values);
      alternation = alternation && throws_protocol([&] { opt.observe(batch, values); });
      evaluations += static_cast<std::size_t>(batch.rows());
    }
    alternation = alternation && throws_protocol([&] { opt.suggest(); });
    budget = budget && evaluations == 128 && opt.archive().size() == 128;
    if (kind == OptimizerKind::steade) {
      lambda_switch = config.lambda == 10 && phases.size() == 16 && phases[8] == Phase::rbf_phase;
      for (std::size_t g = 10; g <= 16; ++g) lambda_switch = lambda_switch && phases[g - 1] == Phase::bayesian_phase;
    }
  }
  return {budget && alternation && lambda_switch && max_suggest < 5.0 && dim_max <= 10,
          std::string("budget ") + (budget ? "ok" : "violated") + ", alternation " + (alternation ? "enforced" : "broken") +
              ", switch at 10 " + (lambda_switch ? "yes" : "no") + ", max suggest " + fmt("%.2f s", max_suggest) +
              " (D <= " + std::to_string(dim_max) + ")"};
}

// 8. Identical archives, summaries and SVG bytes across repeated runs.
Outcome determinism(const fs::path& root, const Ablation* a) {
  StudySpec spec;
  spec.optimizers = {"steade", "de", "rbf", "bo"};
  spec.problems = {"branin", "sphere_noisy"};
  spec.seeds = {3};
  const auto once = [&](const std::string& name) {
    spec.output_dir = root / name;
    const auto records = run_study(spec);
    const Summary s = aggregate(records);
    return std::array<std::string, 4>{archive_text(read_records(spec.output_dir)), summary_csv(s), convergence_csv(s),
                                      convergence_svg(s)};
  };
  const auto first = once("determinism_a");
  const auto second = once("determinism_b");
  bool same = first == second;
  std::string detail = same ? "archives, summaries and svg identical" : "repeated study differs";
  if (a != nullptr) {
    // The same triples inside the ablation must match as well.
    std::vector<RunRecord> subset;
    for (const auto& kind : spec.optimizers) {
      for (const auto& problem : spec.problems) {
        for (const auto& r : a->records) {
          if (r.optimizer == kind && r.problem == problem && r.seed == 3) subset.push_back(r);
        }
      }
    }
    const bool matches = archive_text(subset) == first[0];
    same = same && matches;
    detail += matches ? "; ablation runs reproduced" : "; ablation runs differ";
  }
  return {same, detail};
}

// 9. Latin and mirror invariants of the symmetric design.
Outcome slhd_validity() {
  std::size_t checked = 0;
  std::size_t valid = 0;
  for (std::size_t n : {8, 16}) {
    for (std::size_t d : {3, 10}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(derive_seed(seed, {n, d}));
        const PointSet x = slhd(n, d, rng);
        ++checked;
        valid += x.rows() == static_cast<Eigen::Index>(n) && x.cols() == static_cast<Eigen::Index>(d) && test::valid_slhd(x) ? 1 : 0;
      }
    }
  }
  return {valid == checked, std::to_string(valid) + "/" + std::to_string(checked) + " designs valid"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steade acceptance suite"};
  std::vector<int> only;
  fs::path out = fs::temp_directory_path() / "steade_acceptance";
  int workers = 0;
  app.add_option("--only", only, "Criteria to run (default all)")->check(CLI::Range(1, 9));
  app.add_option("--out", out, "Scratch directory for study output");
  app.add_option("--workers", workers, "Parallel runs in the ablation study");
  CLI11_PARSE(app, argc, argv);
  const auto wanted = [&](int c) { return only.empty() || std::find(only.begin(), only.end(), c) != only.end(); };

  fs::remove_all(out);
  fs::create_directories(out);

  std::optional<Ablation> ablation;
  const auto need_ablation = [&] {
    if (!ablation) {
      const auto t0 = Clock::now();
      Ablation a;
      a.records = run_study(ablation_spec(out / "ablation"), workers);
      a.summary = aggregate(a.records);
      a.seconds = seconds_since(t0);
      std::printf("%s", summary_table(a.summary).c_str());
      ablation = std::move(a);
    }
    return *ablation;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ablation direction", [&] { return ablation_direction(need_ablation()); }},
      {"convergence profile", [&] { return convergence_shape(need_ablation()); }},
      {"rbf interpolation", rbf_interpolation},
      {"qei oracle", qei_oracle},
      {"gp correctness", gp_correctness},
      {"crossover distribution", crossover_distribution},
      {"budget and protocol", [&] { return budget_protocol(need_ablation()); }},
      {"determinism", [&] { return determinism(out, ablation ? &*ablation : nullptr); }},
      {"slhd validity", slhd_validity},
  };

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    if (!wanted(id)) continue;
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[c].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(out);
  return failures == 0 ? 0 : 1;
}
