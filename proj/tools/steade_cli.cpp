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

// Command-line front end: run studies, summarize them, chart convergence.
//
//   steade run --spec study.json [--workers N]
//   steade compare --dir runs --out summary.csv
//   steade plot --dir runs --out convergence.svg
//
// STEADE_WORKERS sets the default worker count for `run`.

#include "steade/study.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

steade::Summary load_summary(const std::filesystem::path& dir) {
  const auto records = steade::read_records(dir);
  if (records.empty()) throw std::runtime_error("no records found in " + dir.string());
  return steade::aggregate(records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STEADE black-box optimization studies"};
  app.require_subcommand(1);

  std::string spec_path;
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run every (optimizer, problem, seed) of a study spec");
  run->add_option("--spec", spec_path, "Study spec JSON")->required();
  run->add_option("--workers", workers, "Parallel runs (default: STEADE_WORKERS or all cores)");

  std::string dir;
  std::string out;
  auto* compare = app.add_subcommand("compare", "Summarize records into a CSV table");
  compare->add_option("--dir", dir, "Directory holding *.jsonl records")->required();
  compare->add_option("--out", out, "CSV output path")->required();

  auto* plot = app.add_subcommand("plot", "Chart best-so-far convergence curves");
  plot->add_option("--dir", dir, "Directory holding *.jsonl records")->required();
  plot->add_option("--out", out, "SVG output path; curve CSV goes next to it")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::ifstream in(spec_path);
      if (!in) throw std::runtime_error("cannot read " + spec_path);
      const auto spec = steade::StudySpec::from_json(nlohmann::json::parse(in));
      const auto records = steade::run_study(spec, workers);
      std::size_t late = 0;
      for (const auto& r : records) late += r.time_limit_exceeded ? 1 : 0;
      std::cout << "wrote " << records.size() << " records to "
                << (spec.output_dir / "records.jsonl").string() << '\n';
      if (late > 0) std::cout << late << " runs exceeded the per-iteration time limit\n";
      std::cout << steade::summary_table(steade::aggregate(records));
    } else if (compare->parsed()) {
      const auto summary = load_summary(dir);
      write_file(out, steade::summary_csv(summary));
      std::cout << steade::summary_table(summary);
    } else if (plot->parsed()) {
      const auto summary = load_summary(dir);
      std::filesystem::path svg(out);
      write_file(svg, steade::convergence_svg(summary));
      write_file(std::filesystem::path(svg).replace_extension(".csv"), steade::convergence_csv(summary));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
