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

#include "noisebench/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "noisebench/error.h"

namespace noisebench {
namespace {

constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp over a left/right bipartite graph given as adjacency lists of
// the left side.
class HopcroftKarp {
 public:
  HopcroftKarp(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_size)
      : adj_(adj), match_left_(adj.size(), kNil), match_right_(right_size, kNil), dist_(adj.size()) {}

  void run() {
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kNil) dfs(u);
      }
    }
  }

  const std::vector<std::size_t>& match_left() const { return match_left_; }

 private:
  // Layers the graph from the free left vertices; true if some free right
  // vertex is reachable.
  bool bfs() {
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kNil) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_right_[v];
        if (w == kNil) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_right_[v];
      if (w == kNil || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> dist_;
};

}  // namespace

bool notes_match(const NoteEvent& reference, const NoteEvent& estimate, double onset_tolerance_s) {
  return reference.pitch == estimate.pitch &&
         std::fabs(reference.onset_s - estimate.onset_s) <= onset_tolerance_s + kOnsetToleranceSlackS;
}

EvalResult EvalResult::from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  EvalResult r;
  r.true_positives = tp;
  r.false_positives = fp;
  r.false_negatives = fn;
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

void to_json(nlohmann::json& j, const EvalResult& r) {
  j = nlohmann::json{{"true_positives", r.true_positives},
                     {"false_positives", r.false_positives},
                     {"false_negatives", r.false_negatives},
                     {"precision", r.precision},
                     {"recall", r.recall},
                     {"f1", r.f1}};
}

void from_json(const nlohmann::json& j, EvalResult& r) {
  j.at("true_positives").get_to(r.true_positives);
  j.at("false_positives").get_to(r.false_positives);
  j.at("false_negatives").get_to(r.false_negatives);
  j.at("precision").get_to(r.precision);
  j.at("recall").get_to(r.recall);
  j.at("f1").get_to(r.f1);
}

NoteMatching match_notes(const NoteList& reference, const NoteList& estimate,
                         double onset_tolerance_s) {
  if (!(onset_tolerance_s > 0.0)) throw DomainError("onset tolerance must be positive");

  // Estimates ordered by (pitch, onset) so each reference note scans only
  // its candidate window.
  std::vector<std::size_t> order(estimate.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (estimate[a].pitch != estimate[b].pitch) return estimate[a].pitch < estimate[b].pitch;
    if (estimate[a].onset_s != estimate[b].onset_s) return estimate[a].onset_s < estimate[b].onset_s;
    return a < b;
  });

  const double reach = onset_tolerance_s + kOnsetToleranceSlackS;
  std::vector<std::vector<std::size_t>> adj(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const NoteEvent& r = reference[i];
    auto it = std::lower_bound(order.begin(), order.end(), r, [&](std::size_t j, const NoteEvent& key) {
      const NoteEvent& e = estimate[j];
      if (e.pitch != key.pitch) return e.pitch < key.pitch;
      return e.onset_s < key.onset_s - reach;
    });
    for (; it != order.end(); ++it) {
      const NoteEvent& e = estimate[*it];
      if (e.pitch != r.pitch || e.onset_s > r.onset_s + reach) break;
      if (notes_match(r, e, onset_tolerance_s)) adj[i].push_back(*it);
    }
  }

  HopcroftKarp hk(adj, estimate.size());
  hk.run();
  NoteMatching pairs;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (hk.match_left()[i] != kNil) pairs.emplace_back(i, hk.match_left()[i]);
  }
  return pairs;
}

EvalResult evaluate(const NoteList& reference, const NoteList& estimate, double onset_tolerance_s) {
  const std::size_t tp = match_notes(reference, estimate, onset_tolerance_s).size();
  return EvalResult::from_counts(tp, estimate.size() - tp, reference.size() - tp);
}

}  // namespace noisebench
