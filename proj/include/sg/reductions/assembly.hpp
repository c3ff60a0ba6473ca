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

#ifndef SG_REDUCTIONS_ASSEMBLY_HPP_
#define SG_REDUCTIONS_ASSEMBLY_HPP_

// Scratch structure for assembling one-controller-per-state games where
// every state is owned by a player of the same name (so constructions
// stay O-TBSGs).  Transitions and rewards accumulate sparsely and are
// densified once the full state set is known.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sg/game.hpp"

namespace sg {
namespace detail {

struct TurnBasedAssembly {
  std::vector<std::string> players;
  std::vector<std::string> state_names;
  std::vector<int> state_player;
  std::vector<std::vector<std::string>> state_actions;
  std::vector<std::vector<std::map<int, double>>> next;    // [state][action]
  std::vector<std::map<std::pair<int, int>, double>> rew;  // [state][{pl,a}]
  std::set<std::string> used_names;

  int add(const std::string& want_name, std::vector<std::string> actions) {
    std::string name = want_name;
    while (used_names.count(name)) name += "_";
    used_names.insert(name);
    players.push_back(name);
    state_names.push_back(name);
    state_player.push_back(static_cast<int>(players.size()) - 1);
    state_actions.push_back(std::move(actions));
    next.emplace_back(state_actions.back().size());
    rew.emplace_back();
    return static_cast<int>(state_names.size()) - 1;
  }

  void arc(int s, int a, int to, double prob = 1.0) {
    next[s][a][to] += prob;
  }

  // from --(action a)--> steps-1 fresh single-action dummies --> to;
  // direct when steps == 1.
  void chain(int from, int a, int to, int steps) {
    int prev = from, act = a;
    for (int k = 1; k < steps; ++k) {
      int d = add("__d" + std::to_string(state_names.size()), {"a"});
      arc(prev, act, d);
      prev = d;
      act = 0;
    }
    arc(prev, act, to);
  }

  void pay(int player, int state, int action, double v) {
    if (v != 0.0) rew[state][{player, action}] += v;
  }

  // Pays `player` the same `v` for every action of `state`.
  void pay_all_actions(int player, int state, double v) {
    for (size_t a = 0; a < state_actions[state].size(); ++a)
      pay(player, state, static_cast<int>(a), v);
  }

  GameSpec materialize(double gamma) const {
    GameSpec g;
    g.discount.mode = DiscountMode::kDiscounted;
    g.discount.gamma = gamma;
    g.player_names = players;
    int n = static_cast<int>(players.size());
    int S = static_cast<int>(state_names.size());
    g.actions.assign(n, std::vector<std::vector<std::string>>(S));
    g.states.resize(S);
    for (int s = 0; s < S; ++s) {
      StateSpec& st = g.states[s];
      st.name = state_names[s];
      st.controllers = {state_player[s]};
      int m = static_cast<int>(state_actions[s].size());
      st.action_counts = {m};
      g.actions[state_player[s]][s] = state_actions[s];
      st.p.assign(m, std::vector<double>(S, 0.0));
      st.r.assign(m, std::vector<double>(n, 0.0));
      for (int a = 0; a < m; ++a)
        for (auto [to, prob] : next[s][a]) st.p[a][to] = prob;
      for (auto [key, v] : rew[s]) st.r[key.second][key.first] = v;
    }
    return g;
  }
};

}  // namespace detail
}  // namespace sg

#endif  // SG_REDUCTIONS_ASSEMBLY_HPP_
