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

#ifndef NOISEBENCH_REPORT_H_
#define NOISEBENCH_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "noisebench/stats.h"
#include "noisebench/sweep.h"
#include "noisebench/transcriber.h"

namespace noisebench {

struct PlotPoint {
  double snr_db = 0.0;
  double mean_score = 0.0;
  double stderr_score = 0.0;

  friend bool operator==(const PlotPoint&, const PlotPoint&) = default;
};

struct PlotSeries {
  std::string label;
  std::vector<PlotPoint> points;  // ascending snr_db

  friend bool operator==(const PlotSeries&, const PlotSeries&) = default;
};

// Mean and standard error (sd / sqrt(n), 0 for n < 2) of `metric` across
// recordings, one series per system, systems in metadata order.
std::vector<PlotSeries> curves_from_sweep(const SweepResult& sweep, Metric metric = Metric::kF1);

// Expected mock F1 per grid level when jitter stays inside the tolerance:
// recall = keep probability, precision = 1.
PlotSeries expected_mock_curve(const MockParams& params, const SnrGrid& grid, const std::string& label);

// Standalone SVG: SNR on x, score in [0, 1] on y, one polyline per series,
// stderr whiskers at every point and a legend. Output depends only on the
// input. Throws DomainError unless some series has at least two points, or
// if points are unsorted or scores fall outside [0, 1].
std::string svg_snr_curves(const std::vector<PlotSeries>& series, const std::string& title = "",
                           const std::string& y_label = "F1");
void render_snr_curves(const std::vector<PlotSeries>& series, const std::filesystem::path& out,
                       const std::string& title = "", const std::string& y_label = "F1");

// Rows: SNR levels; columns: series means (with stderr).
std::string curves_markdown(const std::vector<PlotSeries>& series);
std::string curves_csv(const std::vector<PlotSeries>& series);

}  // namespace noisebench

#endif  // NOISEBENCH_REPORT_H_
