// Copyright 2026 The sg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SG_SOLVERS_CYCLES_HPP_
#define SG_SOLVERS_CYCLES_HPP_

// Exact pure equilibria for graph games: deterministic local-reward
// O-TBSGs with action-independent rewards.  A player is paid only on
// visits to its own state, so with non-negative rewards it wants the
// fastest return (commit shortest cycles first, peel, repeat) and with
// non-positive rewards the slowest or none (local improvement to longer
// return cycles until no single switch helps).

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/solvers/result.hpp"

namespace sg {
namespace detail {

// adjacency[s][a] = the state action a moves to (rows are deterministic).
inline std::vector<std::vector<int>> deterministic_targets(const GameSpec& g) {
  std::vector<std::vector<int>> t(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    const auto& st = g.states[s];
    t[s].resize(st.joint_count(), -1);
    for (int a = 0; a < st.joint_count(); ++a) {
      for (int s2 = 0; s2 < g.num_states(); ++s2) {
        if (st.p[a][s2] > 0.5) {
          t[s][a] = s2;
          break;
        }
      }
      if (t[s][a] < 0) fail("WrongClass", "transitions are not deterministic");
    }
  }
  return t;
}

// Shortest cycle through `v` in the subgraph of non-removed vertices,
// as the vertex sequence v,...,w with an edge w->v.  Empty if none.
// BFS expands successors in action order, so among equally short cycles
// the action-lexicographic one is found.
inline std::vector<int> shortest_cycle_through(
    const std::vector<std::vector<int>>& targets,
    const std::vector<char>& removed, int v) {
  int S = static_cast<int>(targets.size());
  std::vector<int> dist(S, -1), parent(S, -1);
  std::deque<int> queue;
  dist[v] = 0;
  queue.push_back(v);
  int best_w = -1, best_len = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (best_len >= 0 && dist[u] + 1 >= best_len) break;
    for (int a = 0; a < static_cast<int>(targets[u].size()); ++a) {
      int w = targets[u][a];
      if (removed[w]) continue;
      if (w == v) {  // closing edge u->v
        if (best_len < 0 || dist[u] + 1 < best_len) {
          best_len = dist[u] + 1;
          best_w = u;
        }
        continue;
      }
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> cycle;
  if (best_w < 0) return cycle;
  for (int u = best_w; u >= 0; u = parent[u]) cycle.push_back(u);
  std::reverse(cycle.begin(), cycle.end());  // v, ..., best_w
  return cycle;
}

}  // namespace detail

// Non-negative case: commit the globally shortest cycle (ties: lowest
// start vertex), remove its vertices, repeat.  Vertices left outside
// every committed cycle can never re-enter their own state, so any
// action (the first) is a best response for them.
inline std::vector<int> shortest_cycle_policy(
    const std::vector<std::vector<int>>& targets) {
  int S = static_cast<int>(targets.size());
  std::vector<int> choice(S, 0);
  std::vector<char> removed(S, 0);
  for (;;) {
    std::vector<int> best;
    for (int v = 0; v < S; ++v) {
      if (removed[v]) continue;
      std::vector<int> cyc = detail::shortest_cycle_through(targets, removed, v);
      if (!cyc.empty() && (best.empty() || cyc.size() < best.size()))
        best = std::move(cyc);
    }
    if (best.empty()) break;
    int k = static_cast<int>(best.size());
    for (int idx = 0; idx < k; ++idx) {
      int u = best[idx], next = best[(idx + 1) % k];
      for (int a = 0; a < static_cast<int>(targets[u].size()); ++a) {
        if (targets[u][a] == next) {
          choice[u] = a;  // lowest action reaching the cycle successor
          break;
        }
      }
      removed[u] = 1;
    }
  }
  return choice;
}

namespace detail {

// First return time of `home` when leaving it by action `a` and following
// `choice` elsewhere; 0 means the orbit never comes back.
inline int return_time(const std::vector<std::vector<int>>& targets,
                       const std::vector<int>& choice, int home, int a) {
  int S = static_cast<int>(targets.size());
  int u = targets[home][a];
  for (int steps = 1; steps <= S; ++steps) {
    if (u == home) return steps;
    u = targets[u][choice[u]];
  }
  return 0;
}

}  // namespace detail

// Non-positive case: sweep players in index order, each switching to the
// own-state action maximizing r_i/(1-gamma^c) (no return beats every
// return when r_i < 0).  A fixed point has no improving single switch,
// which is exactly a pure NE under the own-state utilities.
inline std::vector<int> longest_cycle_policy(
    const GameSpec& g, const std::vector<std::vector<int>>& targets) {
  int S = g.num_states();
  double gamma = g.discount.gamma;
  std::vector<int> choice(S, 0);
  std::vector<int> own_of_state(S, -1);  // inverse of own_state()
  for (int i = 0; i < g.num_players(); ++i) own_of_state[g.own_state(i)] = i;

  long max_sweeps = 10;
  for (int s = 0; s < S; ++s)
    max_sweeps += 10L * static_cast<long>(targets[s].size());
  for (long sweep = 0;; ++sweep) {
    if (sweep >= max_sweeps)
      fail("NoConvergence", "longest-cycle improvement failed to settle");
    bool changed = false;
    for (int s = 0; s < S; ++s) {
      int i = own_of_state[s];
      const auto& st = g.states[s];
      double r = st.r[0][i];  // action-independent own-state reward
      auto value_of = [&](int a) {
        int c = detail::return_time(targets, choice, s, a);
        return c == 0 ? r : r / (1.0 - std::pow(gamma, c));
      };
      double cur = value_of(choice[s]);
      int best_a = choice[s];
      double best = cur;
      for (int a = 0; a < static_cast<int>(targets[s].size()); ++a) {
        double v = value_of(a);
        if (v > best) {
          best = v;
          best_a = a;
        }
      }
      if (best_a != choice[s] && best > cur + 1e-12) {
        choice[s] = best_a;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return choice;
}

// Exact pure NE for graph games of either fixed reward sign.
inline SolveResult cycle_ne_graph(const GameSpec& g) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "cycle_ne_graph requires discounted mode");
  GameClass cls = classify_game(g);
  if (!cls.is_otbsg || !cls.is_locreward || !cls.deterministic_transitions ||
      !cls.action_independent_rewards)
    fail("WrongClass",
         "cycle_ne_graph needs a deterministic local-reward O-TBSG with "
         "action-independent rewards");
  if (cls.reward_sign == RewardSign::kMixed)
    fail("WrongClass", "cycle_ne_graph needs fixed-sign rewards");
  auto targets = detail::deterministic_targets(g);
  std::vector<int> choice = cls.reward_sign == RewardSign::kNonPositive
                                ? longest_cycle_policy(g, targets)
                                : shortest_cycle_policy(targets);

  SolveResult res;
  res.method = "cycle";
  res.strategy = pure_strategy(g, [&](int, int s) { return choice[s]; });
  res.certificate =
      deviation_gap(g, res.strategy, QChoice{QKind::kOwnState, {}}, 0.0);
  return res;
}

}  // namespace sg

#endif  // SG_SOLVERS_CYCLES_HPP_
