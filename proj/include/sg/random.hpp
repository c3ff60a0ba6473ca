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

#ifndef SG_RANDOM_HPP_
#define SG_RANDOM_HPP_

// Seeded random instance generators used by the test suites.  Transition
// rows are strictly positive unless a generator promises determinism, so
// induced chains are irreducible and average-reward evaluation stays in
// the unichain regime.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "sg/game.hpp"

namespace sg {

using Rng = std::mt19937_64;

inline double uniform_real(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

// Strictly positive random distribution (normalized unit exponentials).
inline std::vector<double> random_dense_dist(Rng& rng, int k) {
  std::vector<double> out(k);
  double total = 0.0;
  for (double& x : out) {
    x = -std::log(1.0 - uniform_real(rng, 0.0, 1.0)) + 1e-3;
    total += x;
  }
  for (double& x : out) x /= total;
  return out;
}

enum class RewardRange { kSigned, kNonNegative, kNonPositive };

inline double random_reward(Rng& rng, RewardRange range) {
  switch (range) {
    case RewardRange::kSigned: return uniform_real(rng, -1.0, 1.0);
    case RewardRange::kNonNegative: return uniform_real(rng, 0.0, 1.0);
    case RewardRange::kNonPositive: return uniform_real(rng, -1.0, 0.0);
  }
  return 0.0;
}

struct RandomGameOptions {
  int max_actions = 3;
  double gamma = 0.5;
  RewardRange rewards = RewardRange::kSigned;
  bool deterministic_transitions = false;
};

namespace detail {

inline std::vector<std::string> index_names(const std::string& prefix,
                                            int count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

// Fills tables for a game whose controller structure is already declared:
// controllers[s] lists (player, action_count).
inline GameSpec fill_random_tables(
    Rng& rng, int n, int S,
    const std::vector<std::vector<std::pair<int, int>>>& controllers,
    const RandomGameOptions& opt, bool locreward) {
  GameSpec g;
  g.player_names = index_names("p", n);
  g.discount.mode = DiscountMode::kDiscounted;
  g.discount.gamma = opt.gamma;
  g.states.resize(S);
  g.actions.assign(n, std::vector<std::vector<std::string>>(S));
  std::vector<int> owner(n, -1);  // for locreward rewards
  for (int s = 0; s < S; ++s) {
    auto& st = g.states[s];
    st.name = "s" + std::to_string(s);
    for (const auto& [i, m] : controllers[s]) {
      st.controllers.push_back(i);
      st.action_counts.push_back(m);
      g.actions[i][s] = index_names("a", m);
      if (owner[i] == -1) owner[i] = s;
    }
    int joints = st.joint_count();
    st.p.resize(joints);
    st.r.assign(joints, std::vector<double>(n, 0.0));
    for (int j = 0; j < joints; ++j) {
      if (opt.deterministic_transitions) {
        st.p[j].assign(S, 0.0);
        st.p[j][uniform_int(rng, 0, S - 1)] = 1.0;
      } else {
        st.p[j] = random_dense_dist(rng, S);
      }
      for (int i = 0; i < n; ++i) {
        if (locreward && owner[i] != s) continue;
        st.r[j][i] = random_reward(rng, opt.rewards);
      }
    }
  }
  return g;
}

}  // namespace detail

// Simultaneous game: every state gets a random nonempty controller subset.
inline GameSpec random_simsg(Rng& rng, int n, int S,
                             const RandomGameOptions& opt = {}) {
  std::vector<std::vector<std::pair<int, int>>> ctrl(S);
  for (int s = 0; s < S; ++s) {
    for (int i = 0; i < n; ++i)
      if (uniform_real(rng, 0.0, 1.0) < 0.5)
        ctrl[s].emplace_back(i, uniform_int(rng, 1, opt.max_actions));
    if (ctrl[s].empty()) {
      int i = uniform_int(rng, 0, n - 1);
      ctrl[s].emplace_back(i, uniform_int(rng, 1, opt.max_actions));
    }
  }
  return detail::fill_random_tables(rng, n, S, ctrl, opt, false);
}

// Turn-based: one uniformly chosen controller per state; every player is
// guaranteed at least one state when S >= n.
inline GameSpec random_tbsg(Rng& rng, int n, int S,
                            const RandomGameOptions& opt = {}) {
  std::vector<std::vector<std::pair<int, int>>> ctrl(S);
  for (int s = 0; s < S; ++s) {
    int i = s < n ? s : uniform_int(rng, 0, n - 1);
    ctrl[s].emplace_back(i, uniform_int(rng, 1, opt.max_actions));
  }
  return detail::fill_random_tables(rng, n, S, ctrl, opt, false);
}

// O-SSG: each player controls exactly one state; with S < n some states
// are shared, making the instance simultaneous but still one-state.
inline GameSpec random_ossg(Rng& rng, int n, int S,
                            const RandomGameOptions& opt = {}) {
  if (S > n) S = n;
  std::vector<std::vector<std::pair<int, int>>> ctrl(S);
  for (int i = 0; i < n; ++i) {
    int s = i < S ? i : uniform_int(rng, 0, S - 1);  // surjective
    ctrl[s].emplace_back(i, uniform_int(rng, 1, opt.max_actions));
  }
  return detail::fill_random_tables(rng, n, S, ctrl, opt, false);
}

// LocReward O-TBSG: player i owns state i and earns rewards only there.
inline GameSpec random_locreward_otbsg(Rng& rng, int n,
                                       const RandomGameOptions& opt = {}) {
  std::vector<std::vector<std::pair<int, int>>> ctrl(n);
  for (int i = 0; i < n; ++i)
    ctrl[i].emplace_back(i, uniform_int(rng, 1, opt.max_actions));
  return detail::fill_random_tables(rng, n, n, ctrl, opt, true);
}

// Graph game for the cycle solvers: deterministic transitions and an
// action-independent own-state reward of the requested sign.
inline GameSpec random_graph_game(Rng& rng, int n, int max_actions,
                                  double gamma, RewardRange sign) {
  RandomGameOptions opt;
  opt.max_actions = max_actions;
  opt.gamma = gamma;
  opt.rewards = sign;
  opt.deterministic_transitions = true;
  GameSpec g = random_locreward_otbsg(rng, n, opt);
  for (int i = 0; i < n; ++i) {
    auto& st = g.states[i];
    double r = random_reward(rng, sign);
    for (auto& row : st.r) row[i] = r;
  }
  return g;
}

// Random average-reward unichain instance (dense positive rows).
inline GameSpec random_average_game(Rng& rng, int n, int S,
                                    const RandomGameOptions& opt = {}) {
  GameSpec g = random_simsg(rng, n, S, opt);
  g.discount.mode = DiscountMode::kAverage;
  g.discount.gamma = 0.0;
  return g;
}

inline Strategy random_strategy(Rng& rng, const GameSpec& g) {
  Strategy out = make_strategy_shell(g);
  for (auto& per_state : out.dist)
    for (auto& d : per_state)
      if (!d.empty()) d = random_dense_dist(rng, static_cast<int>(d.size()));
  return out;
}

inline Strategy random_pure_strategy(Rng& rng, const GameSpec& g) {
  Strategy out = make_strategy_shell(g);
  for (auto& per_state : out.dist)
    for (auto& d : per_state)
      if (!d.empty())
        d[uniform_int(rng, 0, static_cast<int>(d.size()) - 1)] = 1.0;
  return out;
}

// Per-player random policy rows (the alt-policy shape of mix_strategy).
inline std::vector<std::vector<double>> random_policy(Rng& rng,
                                                      const GameSpec& g,
                                                      int player) {
  std::vector<std::vector<double>> out(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    int m = g.action_count(player, s);
    if (m > 0) out[s] = random_dense_dist(rng, m);
  }
  return out;
}

inline std::vector<std::vector<double>> random_pure_policy(Rng& rng,
                                                           const GameSpec& g,
                                                           int player) {
  std::vector<std::vector<double>> out(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    int m = g.action_count(player, s);
    if (m > 0) {
      out[s].assign(m, 0.0);
      out[s][uniform_int(rng, 0, m - 1)] = 1.0;
    }
  }
  return out;
}

}  // namespace sg

#endif  // SG_RANDOM_HPP_
