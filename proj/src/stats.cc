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

#include "noisebench/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noisebench/error.h"

namespace noisebench {
namespace {

constexpr double kCfEpsilon = 1e-12;
constexpr int kCfMaxIterations = 300;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    // even step
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    // odd step
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kCfEpsilon) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge (a=" +
                         std::to_string(a) + ", b=" + std::to_string(b) + ", x=" +
                         std::to_string(x) + ")");
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Two-pass unbiased sample variance.
double variance_of(const std::vector<double>& v, double mean) {
  double ss = 0.0;
  double comp = 0.0;
  for (double x : v) {
    ss += (x - mean) * (x - mean);
    comp += x - mean;
  }
  const double n = static_cast<double>(v.size());
  return (ss - comp * comp / n) / (n - 1.0);
}

void check_sample(const ScoreSample& s, const char* role) {
  if (s.values.size() < 2) {
    throw DomainError(std::string(role) + " sample '" + s.system_id + "' needs at least two values");
  }
  for (double x : s.values) {
    if (!std::isfinite(x)) throw DomainError(std::string(role) + " sample has a non-finite value");
  }
}

}  // namespace

Metric parse_metric(std::string_view name) {
  if (name == "precision") return Metric::kPrecision;
  if (name == "recall") return Metric::kRecall;
  if (name == "f1") return Metric::kF1;
  throw DomainError("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kPrecision:
      return "precision";
    case Metric::kRecall:
      return "recall";
    case Metric::kF1:
      return "f1";
  }
  return "f1";
}

TestKind parse_test_kind(std::string_view name) {
  if (name == "paired") return TestKind::kPaired;
  if (name == "welch") return TestKind::kWelch;
  throw DomainError("unknown t-test kind '" + std::string(name) + "' (expected paired or welch)");
}

std::string_view to_string(TestKind kind) {
  return kind == TestKind::kPaired ? "paired" : "welch";
}

double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
    throw DomainError("incomplete beta requires 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log(y) - log_beta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw DomainError("degrees of freedom must be positive");
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  if (t == 0.0) return 0.5;
  const double t2 = t * t;
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
  return t > 0.0 ? tail : 1.0 - tail;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw DomainError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  if (std::isnan(t)) throw DomainError("t must not be NaN");
  if (t == 0.0) return 1.0;
  const double t2 = t * t;
  const double p = incomplete_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
  return std::clamp(p, 0.0, 1.0);
}

TTestResult t_test(const ScoreSample& baseline, const ScoreSample& variant, TestKind kind) {
  if (baseline.metric != variant.metric) throw DomainError("t-test samples use different metrics");
  if (baseline.snr_db != variant.snr_db) throw DomainError("t-test samples come from different SNR levels");
  check_sample(baseline, "baseline");
  check_sample(variant, "variant");

  TTestResult r;
  r.kind = kind;
  if (kind == TestKind::kPaired) {
    if (baseline.values.size() != variant.values.size()) {
      throw DomainError("paired t-test needs equal sample lengths (" +
                        std::to_string(baseline.values.size()) + " vs " +
                        std::to_string(variant.values.size()) + ")");
    }
    std::vector<double> diff(baseline.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = baseline.values[i] - variant.values[i];
    const double n = static_cast<double>(diff.size());
    const double m = mean_of(diff);
    const double var = variance_of(diff, m);
    if (!(var > 0.0)) throw DegenerateSampleError("paired differences have zero variance");
    r.t_statistic = m / std::sqrt(var / n);
    r.degrees_of_freedom = n - 1.0;
  } else {
    const double nb = static_cast<double>(baseline.values.size());
    const double nv = static_cast<double>(variant.values.size());
    const double mb = mean_of(baseline.values);
    const double mv = mean_of(variant.values);
    const double qb = variance_of(baseline.values, mb) / nb;
    const double qv = variance_of(variant.values, mv) / nv;
    const double se2 = qb + qv;
    if (!(se2 > 0.0)) throw DegenerateSampleError("both samples have zero variance");
    r.t_statistic = (mb - mv) / std::sqrt(se2);
    r.degrees_of_freedom = se2 * se2 / (qb * qb / (nb - 1.0) + qv * qv / (nv - 1.0));
  }
  r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
  return r;
}

std::vector<SignificanceRange> significant_ranges(const std::map<double, TTestResult>& tests,
                                                  double alpha, const SnrGrid& grid, Metric metric) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const auto levels = snr_levels(grid);
  const double eps = 1e-9 * grid.step_db;
  std::vector<bool> significant(levels.size(), false);
  for (const auto& [snr, test] : tests) {
    const auto it = std::find_if(levels.begin(), levels.end(),
                                 [&](double level) { return std::fabs(level - snr) <= eps; });
    if (it == levels.end()) {
      throw DomainError("t-test keyed by SNR " + std::to_string(snr) + " which is not on the grid");
    }
    significant[static_cast<std::size_t>(it - levels.begin())] =
        test.t_statistic < 0.0 && test.p_value < alpha;
  }

  std::vector<SignificanceRange> ranges;
  for (std::size_t i = 0; i < levels.size();) {
    if (!significant[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < levels.size() && significant[j + 1]) ++j;
    ranges.push_back({metric, levels[i], levels[j]});
    i = j + 1;
  }
  return ranges;
}

std::string format_ranges(const std::vector<SignificanceRange>& ranges) {
  if (ranges.empty()) return "none";
  std::string out;
  for (const auto& r : ranges) {
    if (!out.empty()) out += ", ";
    out += "[" + format_snr_level(r.lo_db) + ", " + format_snr_level(r.hi_db) + "]";
  }
  return out;
}

}  // namespace noisebench
