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

#ifndef NOISEBENCH_TESTS_MATCH_ORACLE_H_
#define NOISEBENCH_TESTS_MATCH_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "noisebench/notes.h"

namespace noisebench::oracle {

// Exhaustive maximum matching: try every assignment of each reference note
// to an unused estimate (or to nothing).
inline std::size_t brute_force_max(const NoteList& ref, const NoteList& est, double tol, std::size_t i,
                            std::vector<bool>& used) {
  if (i == ref.size()) return 0;
  std::size_t best = brute_force_max(ref, est, tol, i + 1, used);
  for (std::size_t j = 0; j < est.size(); ++j) {
    if (used[j] || ref[i].pitch != est[j].pitch || std::fabs(ref[i].onset_s - est[j].onset_s) > tol + 1e-9) continue;
    used[j] = true;
    best = std::max(best, 1 + brute_force_max(ref, est, tol, i + 1, used));
    used[j] = false;
  }
  return best;
}

inline NoteList random_notes(std::mt19937_64& rng, std::size_t n, int pitches, double span) {
  std::uniform_real_distribution<double> onset(0.0, span);
  std::uniform_int_distribution<int> pitch(60, 60 + pitches - 1);
  std::vector<NoteEvent> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = onset(rng);
    v.push_back({t, t + 0.2, pitch(rng), std::nullopt});
  }
  return NoteList(std::move(v));
}

}  // namespace noisebench::oracle

#endif  // NOISEBENCH_TESTS_MATCH_ORACLE_H_
