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

#ifndef STEADE_RECORD_HPP
#define STEADE_RECORD_HPP

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace steade {

struct IterationRecord {
  std::vector<std::vector<double>> points;  // native coordinates
  std::vector<double> values;               // observed (possibly noisy) values
  double suggest_seconds = 0.0;             // wall clock, outside the determinism contract
  bool over_time_limit = false;
};

// One optimizer run on one problem with one seed.
struct RunRecord {
  std::string optimizer;
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t batch = 0;
  std::size_t iterations = 0;  // configured; cut-off runs hold fewer entries in history
  std::vector<IterationRecord> history;
  std::vector<double> best_point;
  double best_value = 0.0;
  double best_noise_free = 0.0;
  double f_opt = 0.0;
  double random_baseline = 0.0;
  bool time_limit_exceeded = false;
  bool cut_off = false;

  std::size_t budget() const { return batch * iterations; }
  std::size_t evaluations() const;

  // Best observed value after each configured iteration; a cut-off run
  // carries its last value forward.
  std::vector<double> best_so_far() const;

  double score() const;
  std::vector<double> score_curve() const;
};

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& doc);

// JSON-lines I/O, one record per line.
void write_records(const std::filesystem::path& file, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_file(const std::filesystem::path& file);

// All *.jsonl files directly inside dir, in file-name order.
std::vector<RunRecord> read_records(const std::filesystem::path& dir);

}  // namespace steade

#endif  // STEADE_RECORD_HPP
