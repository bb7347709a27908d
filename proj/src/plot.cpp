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

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace steade {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string num(double v) { return fmt("%.10g", v); }

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string summary_csv(const Summary& summary) {
  std::ostringstream out;
  out << "kind,median,mean,normalized_mean,n_runs\n";
  for (const auto& r : summary.rows) {
    out << r.kind << ',' << num(r.median) << ',' << num(r.mean) << ',' << num(r.normalized_mean)
        << ',' << r.n_runs << '\n';
  }
  return out.str();
}

std::string summary_table(const Summary& summary) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %12s %12s %16s %8s\n", "kind", "median", "mean",
                "normalized_mean", "n_runs");
  out << line;
  for (const auto& r : summary.rows) {
    std::snprintf(line, sizeof(line), "%-10s %12.5f %12.5f %16.5f %8zu\n", r.kind.c_str(), r.median,
                  r.mean, r.normalized_mean, r.n_runs);
    out << line;
  }
  return out.str();
}

std::string convergence_csv(const Summary& summary) {
  std::ostringstream out;
  out << "kind,statistic,iteration,value\n";
  for (const auto& row : summary.rows) {
    const auto& curve = summary.curves.at(row.kind);
    for (std::size_t i = 0; i < curve.median.size(); ++i) {
      out << row.kind << ",median," << i + 1 << ',' << num(curve.median[i]) << '\n';
    }
    for (std::size_t i = 0; i < curve.mean.size(); ++i) {
      out << row.kind << ",mean," << i + 1 << ',' << num(curve.mean[i]) << '\n';
    }
  }
  return out.str();
}

std::string convergence_svg(const Summary& summary) {
  constexpr double kWidth = 960.0;
  constexpr double kHeight = 420.0;
  constexpr double kPanelWidth = 380.0;
  constexpr double kPanelHeight = 300.0;
  constexpr double kTop = 50.0;
  const double lefts[2] = {70.0, 550.0};
  const std::size_t iters = summary.iterations;

  double ymax = 0.0;
  for (const auto& [kind, c] : summary.curves) {
    for (const double v : c.median) ymax = std::max(ymax, v);
    for (const double v : c.mean) ymax = std::max(ymax, v);
  }
  ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;

  auto xpos = [&](double left, std::size_t i) {
    if (iters <= 1) return left + kPanelWidth / 2.0;
    return left + kPanelWidth * static_cast<double>(i) / static_cast<double>(iters - 1);
  };
  auto ypos = [&](double v) { return kTop + kPanelHeight * (1.0 - v / ymax); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const char* titles[2] = {"median best-so-far normalized score", "mean best-so-far normalized score"};
  for (int panel = 0; panel < 2; ++panel) {
    const double left = lefts[panel];
    out << "<text x=\"" << fmt("%.1f", left + kPanelWidth / 2) << "\" y=\"30\" text-anchor=\"middle\" font-size=\"13\">"
        << titles[panel] << "</text>\n";
    out << "<line x1=\"" << fmt("%.1f", left) << "\" y1=\"" << fmt("%.1f", kTop + kPanelHeight) << "\" x2=\""
        << fmt("%.1f", left + kPanelWidth) << "\" y2=\"" << fmt("%.1f", kTop + kPanelHeight)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt("%.1f", left) << "\" y1=\"" << fmt("%.1f", kTop) << "\" x2=\"" << fmt("%.1f", left)
        << "\" y2=\"" << fmt("%.1f", kTop + kPanelHeight) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double v = ymax * t / 4.0;
      out << "<text x=\"" << fmt("%.1f", left - 6) << "\" y=\"" << fmt("%.1f", ypos(v) + 4)
          << "\" text-anchor=\"end\">" << fmt("%.2f", v) << "</text>\n";
    }
    for (std::size_t i = 0; i < iters; ++i) {
      out << "<text x=\"" << fmt("%.1f", xpos(left, i)) << "\" y=\"" << fmt("%.1f", kTop + kPanelHeight + 16)
          << "\" text-anchor=\"middle\">" << i + 1 << "</text>\n";
    }
    out << "<text x=\"" << fmt("%.1f", left + kPanelWidth / 2) << "\" y=\"" << fmt("%.1f", kTop + kPanelHeight + 34)
        << "\" text-anchor=\"middle\">iteration</text>\n";
    std::size_t color = 0;
    for (const auto& row : summary.rows) {
      const auto& c = summary.curves.at(row.kind);
      const auto& values = panel == 0 ? c.median : c.mean;
      out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 8] << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ' ';
        out << fmt("%.2f", xpos(left, i)) << ',' << fmt("%.2f", ypos(values[i]));
      }
      out << "\"/>\n";
      ++color;
    }
  }
  std::size_t color = 0;
  for (const auto& row : summary.rows) {
    const double x = 70.0 + 110.0 * static_cast<double>(color);
    out << "<rect x=\"" << fmt("%.1f", x) << "\" y=\"400\" width=\"14\" height=\"4\" fill=\"" << kPalette[color % 8]
        << "\"/><text x=\"" << fmt("%.1f", x + 18) << "\" y=\"405\">" << row.kind << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace steade
