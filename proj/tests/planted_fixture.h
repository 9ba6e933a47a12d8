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

#ifndef NOISEBENCH_TESTS_PLANTED_FIXTURE_H_
#define NOISEBENCH_TESTS_PLANTED_FIXTURE_H_

#include <algorithm>
#include <cmath>
#include <string>

#include "noisebench/sweep.h"

namespace noisebench::testing {

// Two systems over the default grid; "var" beats "base" by `effect` at every
// level <= cutoff and ties it (up to alternating jitter of zero mean) above.
inline SweepResult planted_sweep(double effect, double cutoff, std::size_t recordings) {
  SweepResult s;
  s.metadata.grid = SnrGrid{};
  s.metadata.systems = {"base", "var"};
  for (double level : snr_levels(s.metadata.grid)) {
    for (std::size_t r = 0; r < recordings; ++r) {
      const std::string id = "rec" + std::to_string(100 + r);
      const double base = 0.4 + 0.5 * (level + 6) / 51 + 0.05 * std::sin(static_cast<double>(r));
      // Alternating jitter: zero mean difference wherever no effect is planted.
      const double jitter = (r % 2 ? 1.0 : -1.0) * (0.005 + 0.001 * static_cast<double>(r % 5));
      const double var = base + (level <= cutoff ? effect : 0.0) + (level <= cutoff ? jitter : jitter * 1e-6);
      const auto cell = [](double f) {
        EvalResult e;
        e.precision = e.recall = e.f1 = std::clamp(f, 0.0, 1.0);
        return e;
      };
      s.cells[{"base", id, level}] = cell(base);
      s.cells[{"var", id, level}] = cell(var);
    }
  }
  return s;
}

}  // namespace noisebench::testing

#endif  // NOISEBENCH_TESTS_PLANTED_FIXTURE_H_
