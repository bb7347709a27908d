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

#include "steade/record.hpp"

#include "steade/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace steade {

std::size_t RunRecord::evaluations() const {
  std::size_t n = 0;
  for (const auto& it : history) n += it.values.size();
  return n;
}

std::vector<double> RunRecord::best_so_far() const {
  std::vector<double> out;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < iterations; ++i) {
    if (i < history.size()) {
      for (const double v : history[i].values) running = std::min(running, v);
    }
    out.push_back(running);
  }
  return out;
}

double RunRecord::score() const { return normalized_score(best_value, f_opt, random_baseline); }

std::vector<double> RunRecord::score_curve() const {
  auto curve = best_so_far();
  for (double& v : curve) v = normalized_score(v, f_opt, random_baseline);
  return curve;
}

namespace {

// JSON has no infinity; failed evaluations are written as null.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& it : r.history) {
    nlohmann::json values = nlohmann::json::array();
    for (const double v : it.values) values.push_back(number(v));
    history.push_back({{"points", it.points},
                       {"values", values},
                       {"suggest_seconds", it.suggest_seconds},
                       {"over_time_limit", it.over_time_limit}});
  }
  return {{"optimizer", r.optimizer},
          {"problem", r.problem},
          {"seed", r.seed},
          {"batch", r.batch},
          {"iterations", r.iterations},
          {"history", history},
          {"best_point", r.best_point},
          {"best_value", number(r.best_value)},
          {"best_noise_free", number(r.best_noise_free)},
          {"f_opt", r.f_opt},
          {"random_baseline", r.random_baseline},
          {"time_limit_exceeded", r.time_limit_exceeded},
          {"cut_off", r.cut_off}};
}

RunRecord record_from_json(const nlohmann::json& doc) {
  RunRecord r;
  r.optimizer = doc.at("optimizer").get<std::string>();
  r.problem = doc.at("problem").get<std::string>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.batch = doc.at("batch").get<std::size_t>();
  r.iterations = doc.at("iterations").get<std::size_t>();
  for (const auto& it : doc.at("history")) {
    IterationRecord ir;
    ir.points = it.at("points").get<std::vector<std::vector<double>>>();
    for (const auto& v : it.at("values")) ir.values.push_back(number_from(v));
    ir.suggest_seconds = it.at("suggest_seconds").get<double>();
    ir.over_time_limit = it.at("over_time_limit").get<bool>();
    r.history.push_back(std::move(ir));
  }
  r.best_point = doc.at("best_point").get<std::vector<double>>();
  r.best_value = number_from(doc.at("best_value"));
  r.best_noise_free = number_from(doc.at("best_noise_free"));
  r.f_opt = doc.at("f_opt").get<double>();
  r.random_baseline = doc.at("random_baseline").get<double>();
  r.time_limit_exceeded = doc.at("time_limit_exceeded").get<bool>();
  r.cut_off = doc.at("cut_off").get<bool>();
  return r;
}

void write_records(const std::filesystem::path& file, const std::vector<RunRecord>& records) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

std::vector<RunRecord> read_records_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

std::vector<RunRecord> read_records(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  for (const auto& f : files) {
    auto part = read_records_file(f);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace steade
