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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "json.hpp"
#include "noisebench/error.h"
#include "noisebench/eval.h"
#include "match_oracle.h"

namespace noisebench {
namespace {

NoteList notes_at(std::initializer_list<std::pair<double, int>> onsets) {
  std::vector<NoteEvent> v;
  for (const auto& [t, p] : onsets) v.push_back({t, t + 0.1, p, std::nullopt});
  return NoteList(std::move(v));
}

using oracle::brute_force_max;
using oracle::random_notes;

void expect_valid_matching(const NoteMatching& m, const NoteList& ref, const NoteList& est, double tol) {
  std::set<std::size_t> rs, es;
  for (const auto& [r, e] : m) {
    EXPECT_TRUE(rs.insert(r).second);
    EXPECT_TRUE(es.insert(e).second);
    EXPECT_TRUE(notes_match(ref[r], est[e], tol));
  }
  EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
}

TEST(MatchNotes, Examples) {
  EXPECT_EQ(match_notes(notes_at({{1.00, 60}}), notes_at({{1.03, 60}}), 0.05).size(), 1u);
  EXPECT_EQ(match_notes(notes_at({{1.00, 60}}), notes_at({{1.00, 61}}), 0.05).size(), 0u);
  // Greedy nearest-neighbour would pair 1.00 with 1.01 and strand the rest.
  const auto ref = notes_at({{1.00, 60}, {1.04, 60}});
  const auto est = notes_at({{0.97, 60}, {1.01, 60}});
  const auto m = match_notes(ref, est, 0.05);
  EXPECT_EQ(m, (NoteMatching{{0, 0}, {1, 1}}));
}

TEST(MatchNotes, ToleranceIsClosed) {
  EXPECT_EQ(match_notes(notes_at({{1.00, 60}}), notes_at({{1.05, 60}}), 0.05).size(), 1u);
  EXPECT_EQ(match_notes(notes_at({{1.00, 60}}), notes_at({{0.95, 60}}), 0.05).size(), 1u);
  EXPECT_EQ(match_notes(notes_at({{1.00, 60}}), notes_at({{1.0501, 60}}), 0.05).size(), 0u);
  EXPECT_EQ(match_notes(notes_at({{0.5, 60}}), notes_at({{0.75, 60}}), 0.25).size(), 1u);
}

TEST(MatchNotes, RejectsNonPositiveTolerance) {
  EXPECT_THROW(match_notes(notes_at({}), notes_at({}), 0.0), DomainError);
  EXPECT_THROW(match_notes(notes_at({}), notes_at({}), -1.0), DomainError);
}

TEST(MatchNotes, EqualsExhaustiveSearchOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ref = random_notes(rng, rng() % 13, 1 + static_cast<int>(rng() % 3), 0.5);
    const auto est = random_notes(rng, rng() % 13, 1 + static_cast<int>(rng() % 3), 0.5);
    const double tol = std::uniform_real_distribution<double>(0.005, 0.2)(rng);
    std::vector<bool> used(est.size(), false);
    const auto m = match_notes(ref, est, tol);
    ASSERT_EQ(m.size(), brute_force_max(ref, est, tol, 0, used)) << "trial " << trial;
    expect_valid_matching(m, ref, est, tol);
  }
}

TEST(Evaluate, Examples) {
  const auto ref = notes_at({{0.1, 60}, {0.5, 62}, {0.9, 64}});
  const auto same = evaluate(ref, ref);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);

  const auto none = evaluate(ref, NoteList());
  EXPECT_EQ(none, (EvalResult{0, 0, 3, 0.0, 0.0, 0.0}));
  EXPECT_EQ(evaluate(NoteList(), NoteList()), (EvalResult{0, 0, 0, 0.0, 0.0, 0.0}));

  const auto two = evaluate(ref, notes_at({{0.11, 60}, {0.52, 62}}));
  EXPECT_EQ(two.true_positives, 2u);
  EXPECT_EQ(two.false_positives, 0u);
  EXPECT_EQ(two.false_negatives, 1u);
  EXPECT_EQ(two.precision, 1.0);
  EXPECT_DOUBLE_EQ(two.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(two.f1, 0.8);
}

TEST(Evaluate, PropertiesOnRandomInstances) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_notes(rng, rng() % 40, 4, 3.0);
    const auto b = random_notes(rng, rng() % 40, 4, 3.0);
    const auto ab = evaluate(a, b);
    const auto ba = evaluate(b, a);
    EXPECT_EQ(ab.true_positives, ba.true_positives);
    EXPECT_LE(ab.true_positives, std::min(a.size(), b.size()));
    EXPECT_EQ(ab.true_positives + ab.false_positives, b.size());
    EXPECT_EQ(ab.true_positives + ab.false_negatives, a.size());
    EXPECT_GE(ab.f1, 0.0);
    EXPECT_LE(ab.f1, 1.0);
    EXPECT_LE(ab.f1, std::min(2 * ab.precision, 2 * ab.recall) + 1e-15);

    // Adding a copy of a reference note to the estimate never lowers tp.
    if (!a.empty()) {
      std::vector<NoteEvent> more(b.begin(), b.end());
      more.push_back(a[rng() % a.size()]);
      EXPECT_GE(evaluate(a, NoteList(std::move(more))).true_positives, ab.true_positives);
    }
  }
}

TEST(Evaluate, LargeListsStayFast) {
  std::mt19937_64 rng(8);
  const auto a = random_notes(rng, 20000, 60, 1200.0);
  const auto b = random_notes(rng, 20000, 60, 1200.0);
  const auto r = evaluate(a, b);
  EXPECT_LE(r.true_positives, 20000u);
  EXPECT_EQ(evaluate(a, a).f1, 1.0);
}

TEST(EvalResult, FromCountsAndJson) {
  EXPECT_EQ(EvalResult::from_counts(0, 0, 0), (EvalResult{0, 0, 0, 0, 0, 0}));
  const auto r = EvalResult::from_counts(3, 1, 2);
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.6);
  EXPECT_DOUBLE_EQ(r.f1, 2 * 0.75 * 0.6 / 1.35);
  const nlohmann::json j = r;
  for (const char* key : {"true_positives", "false_positives", "false_negatives", "precision", "recall", "f1"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.size(), 6u);
  EXPECT_EQ(j.get<EvalResult>(), r);
}

}  // namespace
}  // namespace noisebench
