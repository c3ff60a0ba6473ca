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

#ifndef SG_REDUCTIONS_COPY_HPP_
#define SG_REDUCTIONS_COPY_HPP_

// Player-copy reduction to state-owning form.  Each (player, state) pair
// becomes its own player "<player>@<state>" controlling exactly that
// state; copies of player i collect i's rewards everywhere, so values,
// one-step errors and equilibria transfer entrywise between the games.
// Pairs where i has no say at s get a single placeholder action, which
// leaves dynamics untouched but keeps every copy owning one state.

#include <string>
#include <utility>
#include <vector>

#include "sg/game.hpp"

namespace sg {

struct CopyReduction {
  GameSpec game;
  int base_players = 0;
  int base_states = 0;

  int copy_index(int player, int state) const {
    return player * base_states + state;
  }
  std::pair<int, int> base_of(int copy) const {
    return {copy / base_states, copy % base_states};
  }
};

inline CopyReduction simsg_to_ossg(const GameSpec& g) {
  ValidationReport rep = validate_game(g);
  if (!rep.structurally_sound())
    fail("InvalidGame", "cannot copy-reduce: " + rep.issues.front().message);
  CopyReduction out;
  int n = out.base_players = g.num_players();
  int S = out.base_states = g.num_states();
  GameSpec& h = out.game;
  h.discount = g.discount;
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < S; ++s)
      h.player_names.push_back(g.player_names[i] + "@" + g.states[s].name);

  h.actions.assign(n * S, std::vector<std::vector<std::string>>(S));
  h.states.resize(S);
  for (int s = 0; s < S; ++s) {
    const StateSpec& src = g.states[s];
    StateSpec& dst = h.states[s];
    dst.name = src.name;
    for (int i = 0; i < n; ++i) {
      dst.controllers.push_back(out.copy_index(i, s));
      int m = g.action_count(i, s);
      if (m > 0) {
        dst.action_counts.push_back(m);
        h.actions[out.copy_index(i, s)][s] = g.actions[i][s];
      } else {
        dst.action_counts.push_back(1);
        h.actions[out.copy_index(i, s)][s] = {"noop"};
      }
    }
    // Placeholder radixes are 1, so joint numbering coincides with the
    // base game's; re-encode anyway rather than rely on that.
    dst.p.resize(dst.joint_count());
    dst.r.resize(dst.joint_count());
    for (int j = 0; j < dst.joint_count(); ++j) {
      std::vector<int> per_copy = h.decode_joint(s, j);
      std::vector<int> per_base;
      for (size_t k = 0; k < src.controllers.size(); ++k)
        per_base.push_back(per_copy[src.controllers[k]]);
      int jb = g.encode_joint(s, per_base);
      dst.p[j] = src.p[jb];
      dst.r[j].assign(n * S, 0.0);
      for (int i = 0; i < n; ++i)
        for (int sc = 0; sc < S; ++sc)
          dst.r[j][out.copy_index(i, sc)] = src.r[jb][i];
    }
  }
  return out;
}

// Base-game strategy -> copy-game strategy (placeholders play their only
// action); rows are copied bit for bit.
inline Strategy push_strategy(const CopyReduction& red, const GameSpec& base,
                              const Strategy& pi) {
  check_strategy(base, pi);
  Strategy out = make_strategy_shell(red.game);
  for (int i = 0; i < red.base_players; ++i)
    for (int s = 0; s < red.base_states; ++s) {
      auto& row = out.dist[red.copy_index(i, s)][s];
      if (base.action_count(i, s) > 0)
        row = pi.dist[i][s];
      else
        row = {1.0};
    }
  return out;
}

inline Strategy pull_strategy(const CopyReduction& red, const GameSpec& base,
                              const Strategy& pic) {
  check_strategy(red.game, pic);
  Strategy out = make_strategy_shell(base);
  for (int i = 0; i < red.base_players; ++i)
    for (int s = 0; s < red.base_states; ++s)
      if (base.action_count(i, s) > 0)
        out.dist[i][s] = pic.dist[red.copy_index(i, s)][s];
  return out;
}

}  // namespace sg

#endif  // SG_REDUCTIONS_COPY_HPP_
