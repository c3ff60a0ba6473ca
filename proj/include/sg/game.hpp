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

#ifndef SG_GAME_HPP_
#define SG_GAME_HPP_

// Core model for n-player discounted stochastic games.
//
// A game is a tuple (n, S, A, p, r, discount).  Each state s has a set of
// controllers I_s; the players in I_s act simultaneously at s, so a "joint
// action" at s is one action per controller.  Turn-based games are the
// special case |I_s| = 1.  Tables are dense over (state, joint action):
// instances in this library are small, and density keeps the linear algebra
// simple and exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace sg {

// All library failures carry a stable machine-readable kind (e.g.
// "InvalidGame", "NotTurnBased") plus a human message.
class SgError : public std::runtime_error {
 public:
  SgError(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind,
                              const std::string& message) {
  throw SgError(kind, message);
}

enum class DiscountMode { kDiscounted, kAbsorbing, kAverage };

struct DiscountSpec {
  DiscountMode mode = DiscountMode::kDiscounted;
  double gamma = 0.0;        // kDiscounted only
  int absorbing_state = -1;  // kAbsorbing only
};

// Per-state block of the game: controllers, transition rows and reward rows
// indexed by joint action.  Joint actions are mixed-radix numbers over the
// controllers in ascending player order, last controller varying fastest.
struct StateSpec {
  std::string name;
  std::vector<int> controllers;    // ascending player indices, nonempty
  std::vector<int> action_counts;  // parallel to controllers
  // p[joint][s'] and r[joint][player]; rows are dense.
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> r;

  int joint_count() const {
    int m = 1;
    for (int c : action_counts) m *= c;
    return m;
  }
};

class GameSpec {
 public:
  std::vector<std::string> player_names;
  std::vector<StateSpec> states;
  // actions[player][state] lists action names; empty unless the player
  // controls the state.
  std::vector<std::vector<std::vector<std::string>>> actions;
  DiscountSpec discount;

  int num_players() const { return static_cast<int>(player_names.size()); }
  int num_states() const { return static_cast<int>(states.size()); }

  int state_index(const std::string& name) const {
    for (int s = 0; s < num_states(); ++s)
      if (states[s].name == name) return s;
    return -1;
  }
  int player_index(const std::string& name) const {
    for (int i = 0; i < num_players(); ++i)
      if (player_names[i] == name) return i;
    return -1;
  }

  bool controls(int player, int state) const {
    const auto& c = states[state].controllers;
    return std::find(c.begin(), c.end(), player) != c.end();
  }
  // Position of `player` among the controllers of `state`, or -1.
  int controller_slot(int player, int state) const {
    const auto& c = states[state].controllers;
    for (int k = 0; k < static_cast<int>(c.size()); ++k)
      if (c[k] == player) return k;
    return -1;
  }
  int action_count(int player, int state) const {
    int k = controller_slot(player, state);
    return k < 0 ? 0 : states[state].action_counts[k];
  }
  // Sole controller of a turn-based state, or -1 if shared.
  int controller_of(int state) const {
    const auto& c = states[state].controllers;
    return c.size() == 1 ? c[0] : -1;
  }
  std::vector<int> controlled_states(int player) const {
    std::vector<int> out;
    for (int s = 0; s < num_states(); ++s)
      if (controls(player, s)) out.push_back(s);
    return out;
  }
  // The unique controlled state of `player`, or -1 if not exactly one.
  int own_state(int player) const {
    int found = -1;
    for (int s = 0; s < num_states(); ++s)
      if (controls(player, s)) {
        if (found >= 0) return -1;
        found = s;
      }
    return found;
  }

  // (player, state) pairs with player a controller, player-major order.
  std::vector<std::pair<int, int>> control_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < num_players(); ++i)
      for (int s = 0; s < num_states(); ++s)
        if (controls(i, s)) out.emplace_back(i, s);
    return out;
  }

  int encode_joint(int state, const std::vector<int>& per_controller) const {
    const auto& st = states[state];
    int j = 0;
    for (size_t k = 0; k < st.controllers.size(); ++k)
      j = j * st.action_counts[k] + per_controller[k];
    return j;
  }
  std::vector<int> decode_joint(int state, int joint) const {
    const auto& st = states[state];
    std::vector<int> a(st.controllers.size());
    for (int k = static_cast<int>(st.controllers.size()) - 1; k >= 0; --k) {
      a[k] = joint % st.action_counts[k];
      joint /= st.action_counts[k];
    }
    return a;
  }

  double gamma() const { return discount.gamma; }
};

// ---------------------------------------------------------------------------
// Strategies

// Stationary strategy profile: dist[player][state] is a distribution over
// A_{player,state}, empty where the player is not a controller.
struct Strategy {
  std::vector<std::vector<std::vector<double>>> dist;
};

// Time-dependent strategy: steps[0] is played first.
struct NonStationaryStrategy {
  std::vector<Strategy> steps;
};

inline Strategy make_strategy_shell(const GameSpec& g) {
  Strategy out;
  out.dist.assign(g.num_players(), {});
  for (int i = 0; i < g.num_players(); ++i) {
    out.dist[i].assign(g.num_states(), {});
    for (int s = 0; s < g.num_states(); ++s) {
      int m = g.action_count(i, s);
      if (m > 0) out.dist[i][s].assign(m, 0.0);
    }
  }
  return out;
}

inline Strategy uniform_strategy(const GameSpec& g) {
  Strategy out = make_strategy_shell(g);
  for (auto& per_state : out.dist)
    for (auto& d : per_state)
      if (!d.empty()) std::fill(d.begin(), d.end(), 1.0 / d.size());
  return out;
}

// choice(player, state) -> action index, queried at controlled pairs only.
template <typename F>
Strategy pure_strategy(const GameSpec& g, F&& choice) {
  Strategy out = make_strategy_shell(g);
  for (int i = 0; i < g.num_players(); ++i)
    for (int s = 0; s < g.num_states(); ++s)
      if (!out.dist[i][s].empty()) out.dist[i][s][choice(i, s)] = 1.0;
  return out;
}

inline Strategy first_action_strategy(const GameSpec& g) {
  return pure_strategy(g, [](int, int) { return 0; });
}

// Throws DimensionMismatch unless `pi` matches `g` and every row is a
// distribution within `tol` (1e-12: modeling bugs should surface early).
inline void check_strategy(const GameSpec& g, const Strategy& pi,
                           double tol = 1e-12) {
  if (static_cast<int>(pi.dist.size()) != g.num_players())
    fail("DimensionMismatch", "strategy has wrong player count");
  for (int i = 0; i < g.num_players(); ++i) {
    if (static_cast<int>(pi.dist[i].size()) != g.num_states())
      fail("DimensionMismatch", "strategy has wrong state count");
    for (int s = 0; s < g.num_states(); ++s) {
      int m = g.action_count(i, s);
      if (static_cast<int>(pi.dist[i][s].size()) != m)
        fail("DimensionMismatch",
             "strategy row size mismatch at player " + g.player_names[i] +
                 " state " + g.states[s].name);
      if (m == 0) continue;
      double sum = 0.0;
      for (double x : pi.dist[i][s]) {
        if (x < -tol) fail("DimensionMismatch", "negative strategy entry");
        sum += x;
      }
      if (std::abs(sum - 1.0) > tol)
        fail("DimensionMismatch",
             "strategy row not a distribution at player " +
                 g.player_names[i] + " state " + g.states[s].name);
    }
  }
}

// Returns true iff every controlled row is a point mass (within 1e-12).
inline bool strategy_is_pure(const GameSpec& g, const Strategy& pi) {
  for (int i = 0; i < g.num_players(); ++i)
    for (int s = 0; s < g.num_states(); ++s)
      for (double x : pi.dist[i][s])
        if (x > 1e-12 && x < 1.0 - 1e-12) return false;
  return true;
}

// Realizes theta*alt + (1-theta)*base for one player's policy; every other
// entry is shared with `base`.  Entries are computed as exactly
// (1-theta)*x + theta*y so the affine identity holds bitwise.
inline Strategy mix_strategy(const GameSpec& g, const Strategy& base,
                             int player,
                             const std::vector<std::vector<double>>& alt,
                             double theta) {
  if (player < 0 || player >= g.num_players())
    fail("PlayerOutOfRange", "no player with index " + std::to_string(player));
  if (theta == 0.0) return base;
  Strategy out = base;
  for (int s = 0; s < g.num_states(); ++s) {
    int m = g.action_count(player, s);
    if (m == 0) continue;
    if (static_cast<int>(alt[s].size()) != m)
      fail("DimensionMismatch", "alt policy row size mismatch");
    for (int a = 0; a < m; ++a)
      out.dist[player][s][a] =
          theta == 1.0 ? alt[s][a]
                       : (1.0 - theta) * base.dist[player][s][a] +
                             theta * alt[s][a];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

enum class IssueSeverity {
  kStructural,  // shape/stochasticity defects; classification refuses these
  kRange,       // soft contract violations (|r| > 1, gamma outside [0,1))
};

struct ValidationIssue {
  IssueSeverity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool structurally_sound() const {
    for (const auto& it : issues)
      if (it.severity == IssueSeverity::kStructural) return false;
    return true;
  }
};

// Checks the full model contract.  Failures are reported, never thrown:
// evaluation remains callable on games that only break soft-range rules
// (several constructions in the test corpus carry |r| > 1 on purpose).
inline ValidationReport validate_game(const GameSpec& g) {
  ValidationReport rep;
  auto structural = [&](const std::string& m) {
    rep.issues.push_back({IssueSeverity::kStructural, m});
  };
  auto range = [&](const std::string& m) {
    rep.issues.push_back({IssueSeverity::kRange, m});
  };

  if (g.num_players() <= 0) structural("game has no players");
  if (g.num_states() <= 0) structural("game has no states");
  for (int i = 0; i < g.num_players(); ++i)
    for (int j = i + 1; j < g.num_players(); ++j)
      if (g.player_names[i] == g.player_names[j])
        structural("duplicate player name " + g.player_names[i]);
  for (int s = 0; s < g.num_states(); ++s)
    for (int t = s + 1; t < g.num_states(); ++t)
      if (g.states[s].name == g.states[t].name)
        structural("duplicate state name " + g.states[s].name);

  for (int s = 0; s < g.num_states(); ++s) {
    const auto& st = g.states[s];
    if (st.controllers.empty()) {
      structural("state " + st.name + " has no controller");
      continue;
    }
    for (size_t k = 0; k < st.controllers.size(); ++k) {
      int c = st.controllers[k];
      if (c < 0 || c >= g.num_players()) {
        structural("state " + st.name + " has out-of-range controller");
        continue;
      }
      if (k > 0 && st.controllers[k - 1] >= c)
        structural("state " + st.name + " controllers not strictly ascending");
      if (st.action_counts[k] <= 0)
        structural("state " + st.name + " controller " + g.player_names[c] +
                   " has empty action set");
      if (static_cast<int>(g.actions[c][s].size()) != st.action_counts[k])
        structural("state " + st.name + " action-name table out of sync");
    }
    int joints = st.joint_count();
    if (static_cast<int>(st.p.size()) != joints ||
        static_cast<int>(st.r.size()) != joints) {
      structural("state " + st.name + " has wrong table size");
      continue;
    }
    for (int j = 0; j < joints; ++j) {
      if (static_cast<int>(st.p[j].size()) != g.num_states() ||
          static_cast<int>(st.r[j].size()) != g.num_players()) {
        structural("state " + st.name + " has ragged rows");
        continue;
      }
      double sum = 0.0;
      bool neg = false;
      for (double x : st.p[j]) {
        if (x < 0.0) neg = true;
        sum += x;
      }
      if (neg)
        structural("transition not stochastic at state " + st.name +
                   ": negative probability");
      else if (std::abs(sum - 1.0) > 1e-12)
        structural("transition not stochastic at state " + st.name +
                   ": row sums to " + std::to_string(sum));
      for (double x : st.r[j])
        if (std::abs(x) > 1.0)
          range("reward out of range at state " + st.name + ": " +
                std::to_string(x));
    }
  }

  switch (g.discount.mode) {
    case DiscountMode::kDiscounted:
      if (!(g.discount.gamma >= 0.0 && g.discount.gamma < 1.0))
        range("gamma out of range: " + std::to_string(g.discount.gamma));
      break;
    case DiscountMode::kAbsorbing: {
      int s0 = g.discount.absorbing_state;
      if (s0 < 0 || s0 >= g.num_states()) {
        structural("absorbing state missing");
        break;
      }
      const auto& st = g.states[s0];
      for (int j = 0; j < st.joint_count(); ++j) {
        if (static_cast<int>(st.p[j].size()) == g.num_states() &&
            std::abs(st.p[j][s0] - 1.0) > 1e-12)
          structural("absorbing state " + st.name + " does not self-loop");
        for (double x : st.r[j])
          if (x != 0.0)
            structural("absorbing state " + st.name + " has nonzero reward");
      }
      break;
    }
    case DiscountMode::kAverage:
      break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classification

enum class RewardSign { kZero, kNonNegative, kNonPositive, kMixed };

inline const char* reward_sign_name(RewardSign s) {
  switch (s) {
    case RewardSign::kZero: return "zero";
    case RewardSign::kNonNegative: return "nonnegative";
    case RewardSign::kNonPositive: return "nonpositive";
    case RewardSign::kMixed: return "mixed";
  }
  return "?";
}

struct GameClass {
  bool is_tbsg = false;       // every state has exactly one controller
  bool is_ossg = false;       // every player controls exactly one state
  bool is_otbsg = false;      // both of the above
  bool is_locreward = false;  // nonzero rewards only at the owner's state
  RewardSign reward_sign = RewardSign::kZero;
  bool deterministic_transitions = false;
  bool action_independent_rewards = false;
};

inline GameClass classify_game(const GameSpec& g) {
  ValidationReport rep = validate_game(g);
  if (!rep.structurally_sound())
    fail("InvalidGame", rep.issues.front().message);

  GameClass cls;
  cls.is_tbsg = true;
  for (int s = 0; s < g.num_states(); ++s)
    if (g.states[s].controllers.size() != 1) cls.is_tbsg = false;
  cls.is_ossg = true;
  for (int i = 0; i < g.num_players(); ++i)
    if (g.own_state(i) < 0) cls.is_ossg = false;
  cls.is_otbsg = cls.is_tbsg && cls.is_ossg;

  cls.is_locreward = cls.is_ossg;
  if (cls.is_ossg) {
    for (int i = 0; i < g.num_players() && cls.is_locreward; ++i) {
      int si = g.own_state(i);
      for (int s = 0; s < g.num_states() && cls.is_locreward; ++s) {
        if (s == si) continue;
        for (const auto& row : g.states[s].r)
          if (row[i] != 0.0) {
            cls.is_locreward = false;
            break;
          }
      }
    }
  }

  // Sign over own-state rewards for LocReward games, all rewards otherwise.
  bool any_pos = false, any_neg = false;
  for (int s = 0; s < g.num_states(); ++s)
    for (const auto& row : g.states[s].r)
      for (int i = 0; i < g.num_players(); ++i) {
        if (cls.is_locreward && g.own_state(i) != s) continue;
        if (row[i] > 0.0) any_pos = true;
        if (row[i] < 0.0) any_neg = true;
      }
  cls.reward_sign = any_pos && any_neg ? RewardSign::kMixed
                    : any_pos          ? RewardSign::kNonNegative
                    : any_neg          ? RewardSign::kNonPositive
                                       : RewardSign::kZero;

  cls.deterministic_transitions = true;
  for (const auto& st : g.states)
    for (const auto& row : st.p) {
      bool point = false;
      for (double x : row)
        if (std::abs(x - 1.0) <= 1e-12) point = true;
      if (!point) cls.deterministic_transitions = false;
    }

  cls.action_independent_rewards = true;
  for (const auto& st : g.states)
    for (int i = 0; i < g.num_players(); ++i)
      for (size_t j = 1; j < st.r.size(); ++j)
        if (st.r[j][i] != st.r[0][i]) cls.action_independent_rewards = false;

  return cls;
}

// ---------------------------------------------------------------------------
// Builder

// Incremental construction with string identifiers.  Structural
// impossibilities (unknown names, duplicate or missing rows) throw
// InvalidGame; numeric contract violations are left for validate_game so
// that deliberately broken instances can still be represented.
class GameBuilder {
 public:
  GameBuilder& discounted(double gamma) {
    discount_.mode = DiscountMode::kDiscounted;
    discount_.gamma = gamma;
    return *this;
  }
  GameBuilder& absorbing(const std::string& state) {
    discount_.mode = DiscountMode::kAbsorbing;
    absorbing_name_ = state;
    return *this;
  }
  GameBuilder& average() {
    discount_.mode = DiscountMode::kAverage;
    return *this;
  }

  int player(const std::string& name) {
    for (size_t i = 0; i < players_.size(); ++i)
      if (players_[i] == name) return static_cast<int>(i);
    players_.push_back(name);
    return static_cast<int>(players_.size()) - 1;
  }
  int state(const std::string& name) {
    for (size_t s = 0; s < state_names_.size(); ++s)
      if (state_names_[s] == name) return static_cast<int>(s);
    state_names_.push_back(name);
    return static_cast<int>(state_names_.size()) - 1;
  }

  // Declares `player` a controller of `state` with the given action names.
  GameBuilder& control(const std::string& player_name,
                       const std::string& state_name,
                       std::vector<std::string> action_names) {
    if (action_names.empty())
      fail("InvalidGame", "empty action set for " + player_name);
    int i = player(player_name);
    int s = state(state_name);
    control_.emplace_back(i, s, std::move(action_names));
    return *this;
  }

  using JointByName = std::vector<std::pair<std::string, std::string>>;

  GameBuilder& transition(const std::string& state_name, JointByName joint,
                          std::vector<std::pair<std::string, double>> dist) {
    transitions_.push_back({state(state_name), std::move(joint),
                            std::move(dist)});
    return *this;
  }
  GameBuilder& reward(const std::string& player_name,
                      const std::string& state_name, JointByName joint,
                      double value) {
    rewards_.push_back({player(player_name), state(state_name),
                        std::move(joint), value});
    return *this;
  }

  GameSpec build() const {
    GameSpec g;
    g.player_names = players_;
    g.discount = discount_;
    int n = static_cast<int>(players_.size());
    int S = static_cast<int>(state_names_.size());
    g.states.resize(S);
    g.actions.assign(n, std::vector<std::vector<std::string>>(S));
    for (int s = 0; s < S; ++s) g.states[s].name = state_names_[s];

    for (const auto& [i, s, names] : control_) {
      if (!g.actions[i][s].empty())
        fail("InvalidGame", "duplicate controller declaration at state " +
                                state_names_[s]);
      g.actions[i][s] = names;
    }
    for (int s = 0; s < S; ++s) {
      auto& st = g.states[s];
      for (int i = 0; i < n; ++i)
        if (!g.actions[i][s].empty()) {
          st.controllers.push_back(i);
          st.action_counts.push_back(static_cast<int>(g.actions[i][s].size()));
        }
      if (st.controllers.empty())
        fail("InvalidGame", "state " + st.name + " has no controller");
      st.p.assign(st.joint_count(), {});
      st.r.assign(st.joint_count(), std::vector<double>(n, 0.0));
    }

    for (const auto& t : transitions_) {
      auto& st = g.states[t.state];
      int j = resolve_joint(g, t.state, t.joint);
      if (!st.p[j].empty())
        fail("InvalidGame",
             "duplicate transition row at state " + st.name);
      std::vector<double> row(S, 0.0);
      double sum = 0.0;
      for (const auto& [name, prob] : t.dist) {
        int s2 = g.state_index(name);
        if (s2 < 0) fail("InvalidGame", "unknown state in dist: " + name);
        row[s2] += prob;
        sum += prob;
      }
      // File-input policy: renormalize only near-misses (<= 1e-9 off).
      double dev = std::abs(sum - 1.0);
      if (dev > 1e-12 && dev <= 1e-9 && sum > 0.0)
        for (double& x : row) x /= sum;
      st.p[j] = std::move(row);
    }
    for (int s = 0; s < S; ++s) {
      auto& st = g.states[s];
      for (int j = 0; j < st.joint_count(); ++j)
        if (st.p[j].empty())
          fail("InvalidGame", "missing transition row at state " + st.name);
    }

    for (const auto& r : rewards_) {
      auto& st = g.states[r.state];
      int j = resolve_joint(g, r.state, r.joint);
      if (seen_reward_.emplace(r.player, r.state, j).second == false)
        fail("InvalidGame", "duplicate reward row at state " + st.name);
      st.r[j][r.player] = r.value;
    }
    seen_reward_.clear();

    if (discount_.mode == DiscountMode::kAbsorbing) {
      int s0 = g.state_index(absorbing_name_);
      if (s0 < 0)
        fail("InvalidGame", "unknown absorbing state " + absorbing_name_);
      g.discount.absorbing_state = s0;
    }
    return g;
  }

 private:
  struct TransitionEntry {
    int state;
    JointByName joint;
    std::vector<std::pair<std::string, double>> dist;
  };
  struct RewardEntry {
    int player;
    int state;
    JointByName joint;
    double value;
  };

  int resolve_joint(const GameSpec& g, int s, const JointByName& joint) const {
    const auto& st = g.states[s];
    std::vector<int> per(st.controllers.size(), -1);
    for (const auto& [pname, aname] : joint) {
      int i = g.player_index(pname);
      if (i < 0) fail("InvalidGame", "unknown player in joint: " + pname);
      int k = g.controller_slot(i, s);
      if (k < 0)
        fail("InvalidGame", "player " + pname + " does not control state " +
                                st.name);
      const auto& names = g.actions[i][s];
      int a = -1;
      for (size_t q = 0; q < names.size(); ++q)
        if (names[q] == aname) a = static_cast<int>(q);
      if (a < 0)
        fail("InvalidGame", "unknown action " + aname + " at state " +
                                st.name);
      per[k] = a;
    }
    for (int v : per)
      if (v < 0)
        fail("InvalidGame", "joint action incomplete at state " + st.name);
    return g.encode_joint(s, per);
  }

  DiscountSpec discount_;
  std::string absorbing_name_;
  std::vector<std::string> players_;
  std::vector<std::string> state_names_;
  std::vector<std::tuple<int, int, std::vector<std::string>>> control_;
  std::vector<TransitionEntry> transitions_;
  std::vector<RewardEntry> rewards_;
  mutable std::set<std::tuple<int, int, int>> seen_reward_;
};

}  // namespace sg

#endif  // SG_GAME_HPP_
