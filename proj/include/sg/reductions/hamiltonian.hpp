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

#ifndef SG_REDUCTIONS_HAMILTONIAN_HPP_
#define SG_REDUCTIONS_HAMILTONIAN_HPP_

// Hamiltonian-cycle hardness construction.  Each vertex i contributes a
// long player (reward -1 at its state) and a short player (+1); edge
// moves are direct from long states, while short-to-long travel runs
// through 2L-step relay chains.  Self-return detours of carefully offset
// lengths (2L+2 short, 2L-1 long) make "everyone tours a Hamiltonian
// cycle" the only pure profile within delta of equilibrium: the graph
// has a Hamiltonian cycle iff the game has a delta-approximate pure NE
// under the own-state utilities.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sg/game.hpp"
#include "sg/json_io.hpp"
#include "sg/reductions/assembly.hpp"

namespace sg {

struct HamiltonianBuild {
  GameSpec game;
  DirectedGraph graph;  // deduplicated, self-loops dropped
  double gamma = 0.5;
  int L = 0;  // |V|
  double delta = 0.0;
  std::vector<std::string> vertices;
  std::vector<int> long_state, short_state;  // by vertex index
  // long_targets[i][a] = vertex whose short state action a jumps to,
  // aligned with the long state's action list (aux excluded).
  std::vector<std::vector<int>> long_targets;

  int vertex_index(const std::string& v) const {
    for (size_t k = 0; k < vertices.size(); ++k)
      if (vertices[k] == v) return static_cast<int>(k);
    return -1;
  }
  // Action index at long@i moving to short@j, or -1.
  int long_action(int i, int j) const {
    for (size_t a = 0; a < long_targets[i].size(); ++a)
      if (long_targets[i][a] == j) return static_cast<int>(a);
    return -1;
  }
  // Action index at short@i heading for long@j: relay chains for j != i
  // in ascending vertex order, then the direct own-long action.
  int short_action(int i, int j) const {
    if (i == j) return L - 1;
    return j < i ? j : j - 1;
  }
};

inline double hamiltonian_delta(double gamma, int L) {
  double c = std::pow(gamma, 2 * L + 2);
  return c * (1.0 - gamma) /
         ((1.0 - c) * (1.0 - std::pow(gamma, 2 * L + 3)));
}

inline HamiltonianBuild hamiltonian_game_build(const DirectedGraph& graph,
                                               double gamma = 0.5) {
  if (!(gamma > 0.0 && gamma < 1.0))
    fail("InvalidGame", "discount must lie in (0, 1)");
  HamiltonianBuild out;
  out.gamma = gamma;
  out.vertices = graph.vertices;
  std::set<std::string> seen(out.vertices.begin(), out.vertices.end());
  if (seen.size() != out.vertices.size())
    fail("InvalidGame", "duplicate vertex names");
  int L = out.L = static_cast<int>(out.vertices.size());
  if (L < 2) fail("GraphTooSmall", "need at least two vertices");
  out.delta = hamiltonian_delta(gamma, L);

  // Canonical edge set: indices, self-loops dropped, duplicates merged.
  std::set<std::pair<int, int>> edges;
  out.graph.vertices = out.vertices;
  for (const auto& [a, b] : graph.edges) {
    int i = out.vertex_index(a), j = out.vertex_index(b);
    if (i < 0 || j < 0) fail("InvalidGame", "edge endpoint is not a vertex");
    if (i == j) continue;
    if (edges.insert({i, j}).second) out.graph.edges.push_back({a, b});
  }

  detail::TurnBasedAssembly as;
  out.long_state.resize(L);
  out.short_state.resize(L);
  out.long_targets.resize(L);
  for (int i = 0; i < L; ++i) {
    // Long actions: reachable short states (own always included) in
    // ascending vertex order, then the self-return detour.
    std::vector<int> targets;
    for (int j = 0; j < L; ++j)
      if (j == i || edges.count({i, j})) targets.push_back(j);
    out.long_targets[i] = targets;
    std::vector<std::string> long_acts;
    for (int j : targets) long_acts.push_back("to_short@" + out.vertices[j]);
    long_acts.push_back("aux");
    out.long_state[i] = as.add("long@" + out.vertices[i], long_acts);

    std::vector<std::string> short_acts;
    for (int j = 0; j < L; ++j)
      if (j != i) short_acts.push_back("to_long@" + out.vertices[j]);
    short_acts.push_back("to_long@" + out.vertices[i]);
    short_acts.push_back("aux");
    out.short_state[i] = as.add("short@" + out.vertices[i], short_acts);
  }
  for (int i = 0; i < L; ++i) {
    int sl = out.long_state[i], ss = out.short_state[i];
    as.pay_all_actions(as.state_player[sl], sl, -1.0);
    as.pay_all_actions(as.state_player[ss], ss, 1.0);
    for (size_t a = 0; a < out.long_targets[i].size(); ++a)
      as.arc(sl, static_cast<int>(a), out.short_state[out.long_targets[i][a]]);
    as.chain(sl, static_cast<int>(out.long_targets[i].size()), sl, 2 * L - 1);
    int a = 0;
    for (int j = 0; j < L; ++j) {
      if (j == i) continue;
      as.chain(ss, a++, out.long_state[j], 2 * L);  // 2L-1 relay states
    }
    as.arc(ss, L - 1, out.long_state[i]);
    as.chain(ss, L, ss, 2 * L + 2);  // 2L+1 detour states
  }
  out.game = as.materialize(gamma);
  return out;
}

// Pure profile touring `cycle` (a permutation of the vertices): long
// players follow the cycle edge, short players hand straight back to
// their own long state.
inline Strategy hamiltonian_cycle_strategy(const HamiltonianBuild& b,
                                           const std::vector<std::string>& cycle) {
  int L = b.L;
  if (static_cast<int>(cycle.size()) != L)
    fail("InvalidGame", "cycle must visit every vertex once");
  std::vector<int> succ(L, -1);
  std::set<int> seen;
  for (int k = 0; k < L; ++k) {
    int i = b.vertex_index(cycle[k]);
    int j = b.vertex_index(cycle[(k + 1) % L]);
    if (i < 0 || j < 0 || !seen.insert(i).second)
      fail("InvalidGame", "cycle must visit every vertex once");
    if (b.long_action(i, j) < 0 || i == j)
      fail("InvalidGame", "cycle uses a missing edge");
    succ[i] = j;
  }
  std::vector<int> choice(b.game.num_states(), 0);
  for (int i = 0; i < L; ++i) {
    choice[b.long_state[i]] = b.long_action(i, succ[i]);
    choice[b.short_state[i]] = b.short_action(i, i);
  }
  return pure_strategy(b.game, [&](int, int s) { return choice[s]; });
}

// Edge (i, j) present iff long@i plays the point mass on short@j, j != i.
inline DirectedGraph induced_subgraph(const HamiltonianBuild& b,
                                      const Strategy& pi) {
  check_strategy(b.game, pi);
  if (!strategy_is_pure(b.game, pi))
    fail("NotPure", "induced subgraph needs a pure strategy");
  DirectedGraph out;
  out.vertices = b.vertices;
  for (int i = 0; i < b.L; ++i) {
    int s = b.long_state[i];
    const auto& row = pi.dist[b.game.states[s].controllers[0]][s];
    for (size_t a = 0; a < b.long_targets[i].size(); ++a) {
      if (row[a] > 0.5 && b.long_targets[i][a] != i)
        out.edges.push_back({b.vertices[i], b.vertices[b.long_targets[i][a]]});
    }
  }
  return out;
}

// Whether the graph contains a Hamiltonian cycle (subset DP; the graphs
// this library builds stay small).
inline bool is_hamiltonian(const DirectedGraph& graph) {
  int n = static_cast<int>(graph.vertices.size());
  if (n < 2 || n > 20) return false;
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[graph.vertices[i]] = i;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : graph.edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      fail("InvalidGame", "edge endpoint is not a vertex");
    if (ia->second != ib->second) adj[ia->second][ib->second] = true;
  }
  // Paths from vertex 0: dp[mask][v] = reachable with visit set = mask.
  int full = 1 << n;
  std::vector<std::vector<bool>> dp(full, std::vector<bool>(n, false));
  dp[1][0] = true;
  for (int mask = 1; mask < full; ++mask) {
    if (!(mask & 1)) continue;
    for (int v = 0; v < n; ++v) {
      if (!dp[mask][v]) continue;
      for (int w = 0; w < n; ++w)
        if (!(mask >> w & 1) && adj[v][w]) dp[mask | (1 << w)][w] = true;
    }
  }
  for (int v = 1; v < n; ++v)
    if (dp[full - 1][v] && adj[v][0]) return true;
  return false;
}

}  // namespace sg

#endif  // SG_REDUCTIONS_HAMILTONIAN_HPP_
