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

#ifndef NOISEBENCH_EVAL_H_
#define NOISEBENCH_EVAL_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "json.hpp"
#include "noisebench/notes.h"

namespace noisebench {

inline constexpr double kDefaultOnsetToleranceS = 0.050;

// Slack added to the onset tolerance so that differences which are equal to
// the tolerance in decimal (1.00 vs 1.05 at 50 ms) still match after binary
// rounding.
inline constexpr double kOnsetToleranceSlackS = 1e-9;

// True when a reference and an estimated note may be matched.
bool notes_match(const NoteEvent& reference, const NoteEvent& estimate,
                 double onset_tolerance_s);

struct EvalResult {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Fills precision/recall/f1 from the counts (0 for empty denominators).
  static EvalResult from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

  friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

void to_json(nlohmann::json& j, const EvalResult& r);
void from_json(const nlohmann::json& j, EvalResult& r);

using NoteMatching = std::vector<std::pair<std::size_t, std::size_t>>;

// Maximum-cardinality matching (Hopcroft-Karp) between reference and
// estimated notes, where an edge joins notes of equal pitch whose onsets lie
// within the tolerance. Pairs are (reference index, estimate index), sorted
// by reference index. Throws DomainError unless the tolerance is positive.
NoteMatching match_notes(const NoteList& reference, const NoteList& estimate,
                         double onset_tolerance_s = kDefaultOnsetToleranceS);

EvalResult evaluate(const NoteList& reference, const NoteList& estimate,
                    double onset_tolerance_s = kDefaultOnsetToleranceS);

}  // namespace noisebench

#endif  // NOISEBENCH_EVAL_H_
