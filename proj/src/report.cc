// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisebench/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "noisebench/error.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 170.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double metric_value(const EvalResult& r, Metric m) {
  return m == Metric::kPrecision ? r.precision : m == Metric::kRecall ? r.recall : r.f1;
}

void validate_series(const std::vector<PlotSeries>& series) {
  bool drawable = false;
  for (const auto& s : series) {
    if (s.points.size() >= 2) drawable = true;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& p = s.points[i];
      if (!std::isfinite(p.snr_db) || !(p.mean_score >= 0.0 && p.mean_score <= 1.0) || !(p.stderr_score >= 0.0)) {
        throw DomainError("series '" + s.label + "' has a point outside the plot domain");
      }
      if (i > 0 && !(s.points[i - 1].snr_db < p.snr_db)) {
        throw DomainError("series '" + s.label + "' points are not sorted by SNR");
      }
    }
  }
  if (!drawable) throw DomainError("nothing to plot: need a series with at least two points");
}

}  // namespace

std::vector<PlotSeries> curves_from_sweep(const SweepResult& sweep, Metric metric) {
  std::vector<std::string> order = sweep.metadata.systems;
  for (const auto& [key, r] : sweep.cells) {
    if (std::find(order.begin(), order.end(), key.system_id) == order.end()) order.push_back(key.system_id);
  }
  std::map<std::string, std::map<double, std::vector<double>>> values;
  for (const auto& [key, r] : sweep.cells) values[key.system_id][key.snr_db].push_back(metric_value(r, metric));

  std::vector<PlotSeries> series;
  for (const auto& system : order) {
    const auto it = values.find(system);
    if (it == values.end()) continue;
    PlotSeries s{system, {}};
    for (const auto& [snr, v] : it->second) {
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= n;
      double se = 0.0;
      if (v.size() >= 2) {
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
      }
      s.points.push_back({snr, std::clamp(mean, 0.0, 1.0), se});
    }
    series.push_back(std::move(s));
  }
  return series;
}

PlotSeries expected_mock_curve(const MockParams& params, const SnrGrid& grid, const std::string& label) {
  PlotSeries s{label, {}};
  for (double level : snr_levels(grid)) {
    const double keep = 1.0 - mock_drop_probability(params, level);
    s.points.push_back({level, 2.0 * keep / (1.0 + keep), 0.0});
  }
  return s;
}

std::string svg_snr_curves(const std::vector<PlotSeries>& series, const std::string& title,
                           const std::string& y_label) {
  validate_series(series);
  std::set<double> levels;
  for (const auto& s : series) {
    for (const auto& p : s.points) levels.insert(p.snr_db);
  }
  const double x_min = *levels.begin();
  const double x_max = *levels.rbegin() > x_min ? *levels.rbegin() : x_min + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double snr) { return kLeft + (snr - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double score) { return kTop + (1.0 - score) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\""
      << fixed(kHeight, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << ' ' << fixed(kHeight, 0)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fixed(kWidth, 0) << "\" height=\"" << fixed(kHeight, 0)
      << "\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text class=\"title\" x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << xml_escape(title) << "</text>\n";
  }

  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(kLeft + plot_w)
      << "\" y2=\"" << fixed(sy(0)) << "\"/>\n";
  svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
      << fixed(sy(1)) << "\"/>\n";
  svg << "</g>\n";

  svg << "<g class=\"x-ticks\" text-anchor=\"middle\">\n";
  for (double level : levels) {
    const double x = sx(level);
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << fixed(x) << "\" y2=\""
        << fixed(sy(0) + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(sy(0) + 18) << "\">" << format_snr_level(level)
        << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<g class=\"y-ticks\" text-anchor=\"end\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(sy(v)) << "\" x2=\"" << fixed(kLeft + plot_w)
        << "\" y2=\"" << fixed(sy(v)) << "\" stroke=\"#dddddd\"/>";
    svg << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(sy(v) + 4) << "\">" << fixed(v, 1) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text class=\"x-label\" x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 14)
      << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
  svg << "<text class=\"y-label\" x=\"16\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(kTop + plot_h / 2) << ")\">" << xml_escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<g class=\"series\" data-label=\"" << xml_escape(s.label) << "\">\n";
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      svg << (j ? " " : "") << fixed(sx(s.points[j].snr_db)) << ',' << fixed(sy(s.points[j].mean_score));
    }
    svg << "\"/>\n";
    for (const auto& p : s.points) {
      const double x = sx(p.snr_db);
      const double lo = sy(std::max(0.0, p.mean_score - p.stderr_score));
      const double hi = sy(std::min(1.0, p.mean_score + p.stderr_score));
      svg << "<g class=\"whisker\" stroke=\"" << color << "\">"
          << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(lo) << "\" x2=\"" << fixed(x) << "\" y2=\"" << fixed(hi) << "\"/>"
          << "<line x1=\"" << fixed(x - 3) << "\" y1=\"" << fixed(lo) << "\" x2=\"" << fixed(x + 3) << "\" y2=\"" << fixed(lo) << "\"/>"
          << "<line x1=\"" << fixed(x - 3) << "\" y1=\"" << fixed(hi) << "\" x2=\"" << fixed(x + 3) << "\" y2=\"" << fixed(hi) << "\"/>"
          << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(sy(p.mean_score)) << "\" r=\"2.5\" fill=\"" << color << "\"/>"
          << "</g>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 16;
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x + 22) << "\" y2=\"" << fixed(y)
        << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\"/>";
    svg << "<text x=\"" << fixed(x + 28) << "\" y=\"" << fixed(y + 4) << "\">" << xml_escape(series[i].label)
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_snr_curves(const std::vector<PlotSeries>& series, const std::filesystem::path& out,
                       const std::string& title, const std::string& y_label) {
  const std::string svg = svg_snr_curves(series, title, y_label);
  std::ofstream file(out, std::ios::trunc | std::ios::binary);
  if (!file) throw IoError("cannot open " + out.string() + " for writing");
  file << svg;
  if (!file) throw IoError("failed writing " + out.string());
}

std::string curves_markdown(const std::vector<PlotSeries>& series) {
  std::set<double> levels;
  for (const auto& s : series) {
    for (const auto& p : s.points) levels.insert(p.snr_db);
  }
  std::ostringstream out;
  out << "| SNR (dB) |";
  for (const auto& s : series) out << ' ' << s.label << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < series.size(); ++i) out << "---|";
  out << '\n';
  for (double level : levels) {
    out << "| " << format_snr_level(level) << " |";
    for (const auto& s : series) {
      const auto it = std::find_if(s.points.begin(), s.points.end(), [&](const PlotPoint& p) { return p.snr_db == level; });
      if (it == s.points.end()) {
        out << " - |";
      } else {
        out << ' ' << fixed(it->mean_score, 4) << " ± " << fixed(it->stderr_score, 4) << " |";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string curves_csv(const std::vector<PlotSeries>& series) {
  std::ostringstream out;
  out << "label,snr_db,mean,stderr\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      out << s.label << ',' << format_double(p.snr_db) << ',' << format_double(p.mean_score) << ','
          << format_double(p.stderr_score) << '\n';
    }
  }
  return out.str();
}

}  // namespace noisebench
