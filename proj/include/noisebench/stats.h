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

#ifndef NOISEBENCH_STATS_H_
#define NOISEBENCH_STATS_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "noisebench/augment.h"

namespace noisebench {

enum class Metric { kPrecision, kRecall, kF1 };

inline constexpr Metric kAllMetrics[] = {Metric::kPrecision, Metric::kRecall, Metric::kF1};

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

enum class TestKind { kPaired, kWelch };

TestKind parse_test_kind(std::string_view name);
std::string_view to_string(TestKind kind);

// Per-recording scores of one system at one SNR level, ordered by recording
// id.
struct ScoreSample {
  std::string system_id;
  double snr_db = 0.0;
  Metric metric = Metric::kF1;
  std::vector<double> values;
};

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;  // two-sided
  TestKind kind = TestKind::kPaired;
};

struct SignificanceRange {
  Metric metric = Metric::kF1;
  double lo_db = 0.0;
  double hi_db = 0.0;

  friend bool operator==(const SignificanceRange&, const SignificanceRange&) = default;
};

// Regularized incomplete beta I_x(a, b), evaluated with the modified Lentz
// continued fraction and the usual symmetry switch at x = (a+1)/(a+b+2).
// `y` must equal 1 - x; passing it separately avoids cancellation when x is
// close to 1. Throws DomainError for a, b <= 0 or x outside [0, 1], and
// ConvergenceError if the fraction has not converged to 1e-12 after 300
// iterations.
double incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

// Upper tail P(T > t) of Student's t with `df` degrees of freedom.
double student_t_sf(double t, double df);

// Two-sided p-value 2 * P(T > |t|), computed without forming the tail twice.
double student_t_two_sided_p(double t, double df);

// Paired: d = baseline - variant, t = mean(d) / (sd(d) / sqrt(n)), df = n - 1.
// Welch: t = (mean_b - mean_v) / sqrt(var_b/n_b + var_v/n_v) with
// Welch-Satterthwaite df. Negative t means the variant scored higher.
//
// Throws DomainError for mismatched metric/SNR, fewer than two values or
// non-finite values; DomainError for unequal lengths in a paired test; and
// DegenerateSampleError when the relevant variance is zero.
TTestResult t_test(const ScoreSample& baseline, const ScoreSample& variant,
                   TestKind kind = TestKind::kPaired);

// Maximal runs of consecutive grid levels with t < 0 and p < alpha, as
// ascending [lo, hi] ranges. Levels missing from `tests` count as not
// significant. Throws DomainError for alpha outside (0, 1) or a key that is
// not a grid level.
std::vector<SignificanceRange> significant_ranges(const std::map<double, TTestResult>& tests,
                                                  double alpha, const SnrGrid& grid,
                                                  Metric metric = Metric::kF1);

// "[-6, 12]"; several ranges are joined with ", ", none gives "none".
std::string format_ranges(const std::vector<SignificanceRange>& ranges);

}  // namespace noisebench

#endif  // NOISEBENCH_STATS_H_
