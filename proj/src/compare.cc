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

#include "noisebench/compare.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "noisebench/error.h"
#include "noisebench/text.h"

namespace noisebench {
namespace {

double metric_value(const EvalResult& r, Metric m) {
  switch (m) {
    case Metric::kPrecision:
      return r.precision;
    case Metric::kRecall:
      return r.recall;
    case Metric::kF1:
      return r.f1;
  }
  return r.f1;
}

std::string_view column_title(Metric m) {
  switch (m) {
    case Metric::kPrecision:
      return "Precision (SNR)";
    case Metric::kRecall:
      return "Recall (SNR)";
    case Metric::kF1:
      return "F1 Score (SNR)";
  }
  return "";
}

}  // namespace

SignificanceTable compare_systems(const SweepResult& sweep, const std::string& baseline_id,
                                  const std::vector<std::string>& variant_ids, double alpha, TestKind kind) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (variant_ids.empty()) throw DomainError("compare needs at least one variant");

  std::set<std::string> systems;
  std::set<std::string> recordings;
  for (const auto& [key, r] : sweep.cells) systems.insert(key.system_id);
  for (const auto& id : variant_ids) {
    if (!systems.count(id)) throw DomainError("variant '" + id + "' has no cells in the sweep");
  }
  if (!systems.count(baseline_id)) throw DomainError("baseline '" + baseline_id + "' has no cells in the sweep");
  for (const auto& [key, r] : sweep.cells) {
    if (key.system_id == baseline_id ||
        std::find(variant_ids.begin(), variant_ids.end(), key.system_id) != variant_ids.end()) {
      recordings.insert(key.recording_id);
    }
  }

  const SnrGrid& grid = sweep.metadata.grid;
  const auto levels = snr_levels(grid);

  // Every involved system must cover every (recording, level) cell.
  std::vector<std::string> missing;
  std::vector<std::string> involved = {baseline_id};
  involved.insert(involved.end(), variant_ids.begin(), variant_ids.end());
  for (const auto& system : involved) {
    for (const auto& rec : recordings) {
      for (double level : levels) {
        if (!sweep.cells.count(CellKey{system, rec, level})) {
          missing.push_back(system + "/" + rec + "/" + format_snr_level(level));
        }
      }
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > 20) list += ", ... (" + std::to_string(missing.size()) + " total)";
    throw DomainError("cell coverage mismatch, missing: " + list);
  }

  const auto sample = [&](const std::string& system, double level, Metric metric) {
    ScoreSample s{system, level, metric, {}};
    for (const auto& rec : recordings) s.values.push_back(metric_value(sweep.cells.at({system, rec, level}), metric));
    return s;
  };

  SignificanceTable table{baseline_id, alpha, kind, true, grid, {}};
  for (const auto& variant : variant_ids) {
    SignificanceRow row;
    row.variant_id = variant;
    for (Metric metric : kAllMetrics) {
      std::map<double, TTestResult> usable;
      for (double level : levels) {
        std::optional<TTestResult> test;
        try {
          test = t_test(sample(baseline_id, level, metric), sample(variant, level, metric), kind);
          usable.emplace(level, *test);
        } catch (const DegenerateSampleError&) {
        }
        row.tests[metric][level] = test;
      }
      row.ranges[metric] = significant_ranges(usable, alpha, grid, metric);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string significance_markdown(const SignificanceTable& table) {
  std::ostringstream out;
  out << "| Variant |";
  for (Metric m : kAllMetrics) out << ' ' << column_title(m) << " |";
  out << "\n|---|---|---|---|\n";
  for (const auto& row : table.rows) {
    out << "| " << row.variant_id << " |";
    for (Metric m : kAllMetrics) out << ' ' << format_ranges(row.ranges.at(m)) << " |";
    out << '\n';
  }
  out << "\nBaseline: " << table.baseline_id << "; " << to_string(table.kind) << " t-test, "
      << (table.two_sided ? "two-sided" : "one-sided") << " p; significant where t < 0 and p < "
      << format_double(table.alpha) << ".\n";
  return out.str();
}

std::string significance_csv(const SignificanceTable& table) {
  std::ostringstream out;
  out << "variant_id,metric,snr_db,t_statistic,degrees_of_freedom,p_value,significant\n";
  for (const auto& row : table.rows) {
    for (Metric m : kAllMetrics) {
      for (const auto& [level, test] : row.tests.at(m)) {
        out << row.variant_id << ',' << to_string(m) << ',' << format_snr_level(level) << ',';
        if (test) {
          const bool sig = test->t_statistic < 0.0 && test->p_value < table.alpha;
          out << format_double(test->t_statistic) << ',' << format_double(test->degrees_of_freedom) << ','
              << format_double(test->p_value) << ',' << (sig ? 1 : 0) << '\n';
        } else {
          out << ",,,0\n";
        }
      }
    }
  }
  return out.str();
}

nlohmann::json significance_json(const SignificanceTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json ranges = nlohmann::json::object();
    nlohmann::json tests = nlohmann::json::object();
    for (Metric m : kAllMetrics) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& r : row.ranges.at(m)) list.push_back({r.lo_db, r.hi_db});
      ranges[std::string(to_string(m))] = list;
      nlohmann::json per_level = nlohmann::json::array();
      for (const auto& [level, test] : row.tests.at(m)) {
        nlohmann::json entry{{"snr_db", level}};
        if (test) {
          entry["t_statistic"] = test->t_statistic;
          entry["degrees_of_freedom"] = test->degrees_of_freedom;
          entry["p_value"] = test->p_value;
        } else {
          entry["degenerate"] = true;
        }
        per_level.push_back(std::move(entry));
      }
      tests[std::string(to_string(m))] = per_level;
    }
    rows.push_back({{"variant_id", row.variant_id}, {"ranges", ranges}, {"tests", tests}});
  }
  return {{"baseline_id", table.baseline_id},
          {"alpha", table.alpha},
          {"test_kind", std::string(to_string(table.kind))},
          {"two_sided", table.two_sided},
          {"criterion", "t_statistic < 0 and p_value < alpha"},
          {"grid", {{"lo_db", table.grid.lo_db}, {"hi_db", table.grid.hi_db}, {"step_db", table.grid.step_db}}},
          {"rows", rows}};
}

}  // namespace noisebench
