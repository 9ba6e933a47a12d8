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

#ifndef NOISEBENCH_COMPARE_H_
#define NOISEBENCH_COMPARE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "noisebench/stats.h"
#include "noisebench/sweep.h"

namespace noisebench {

// One variant's results against the baseline.
struct SignificanceRow {
  std::string variant_id;
  // Per metric and SNR level; nullopt where the test was degenerate (zero
  // variance), which counts as not significant.
  std::map<Metric, std::map<double, std::optional<TTestResult>>> tests;
  std::map<Metric, std::vector<SignificanceRange>> ranges;
};

struct SignificanceTable {
  std::string baseline_id;
  double alpha = 0.05;
  TestKind kind = TestKind::kPaired;
  bool two_sided = true;
  SnrGrid grid;
  std::vector<SignificanceRow> rows;
};

// Runs a t-test per (variant, metric, SNR level) over the per-recording
// scores and extracts the significant SNR ranges. Throws DomainError listing
// the missing cells when the baseline and a variant do not cover the same
// (recording, SNR) cells, or when a system is absent from the sweep.
SignificanceTable compare_systems(const SweepResult& sweep, const std::string& baseline_id,
                                  const std::vector<std::string>& variant_ids, double alpha = 0.05,
                                  TestKind kind = TestKind::kPaired);

// | Variant | Precision (SNR) | Recall (SNR) | F1 Score (SNR) |
std::string significance_markdown(const SignificanceTable& table);
std::string significance_csv(const SignificanceTable& table);
nlohmann::json significance_json(const SignificanceTable& table);

}  // namespace noisebench

#endif  // NOISEBENCH_COMPARE_H_
