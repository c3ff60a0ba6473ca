// Copyright 2026 The sg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared game fixtures for the test suites. Every fixture is built through
// the public GameBuilder so the tests exercise the same path user code does.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sg/game.hpp"

namespace sgtest {

// Two-player, two-state turn-based game. Player i controls state si with
// actions {stay, move}; stay loops, move swaps states. The controlling
// player earns `own_reward` at their own state regardless of action.
// With own_reward = 1 the unique pure NE is stay/stay (V_i(si) = 2 at
// gamma = 1/2); with own_reward = -1 it is move/move (V_i(si) = -4/3).
inline sg::GameSpec make_g2(double own_reward = 1.0, double gamma = 0.5) {
  sg::GameBuilder b;
  b.discounted(gamma);
  b.control("p1", "s1", {"stay", "move"});
  b.control("p2", "s2", {"stay", "move"});
  b.transition("s1", {{"p1", "stay"}}, {{"s1", 1.0}});
  b.transition("s1", {{"p1", "move"}}, {{"s2", 1.0}});
  b.transition("s2", {{"p2", "stay"}}, {{"s2", 1.0}});
  b.transition("s2", {{"p2", "move"}}, {{"s1", 1.0}});
  b.reward("p1", "s1", {{"p1", "stay"}}, own_reward);
  b.reward("p1", "s1", {{"p1", "move"}}, own_reward);
  b.reward("p2", "s2", {{"p2", "stay"}}, own_reward);
  b.reward("p2", "s2", {{"p2", "move"}}, own_reward);
  return b.build();
}

inline sg::GameSpec make_g2_negated(double gamma = 0.5) {
  return make_g2(-1.0, gamma);
}

// Turn-based counterexample to pseudo-linearity when one player controls
// two states. Player 1 controls {A, B}, player 2 controls {C}; gamma = 5/6.
// Along the segment from the all-action-2 profile (lambda = 0) to the
// profile playing action 1 at A and B (lambda = 1),
//   V_1(A) = (63 - 37 l)(1 + 0.1 l) / (4 l^2 - 84 l + 147),
// which peaks strictly inside (0, 1). Rewards are scaled by (1 - gamma)
// so the value function reproduces that closed form exactly.
inline sg::GameSpec make_appendix_a() {
  sg::GameBuilder b;
  b.discounted(5.0 / 6.0);
  b.control("p1", "A", {"a1", "a2"});
  b.control("p1", "B", {"a1", "a2"});
  b.control("p2", "C", {"a1", "a2"});
  b.transition("A", {{"p1", "a1"}}, {{"A", 2.0 / 5}, {"B", 1.0 / 5}, {"C", 2.0 / 5}});
  b.transition("A", {{"p1", "a2"}}, {{"A", 1.0 / 5}, {"B", 2.0 / 5}, {"C", 2.0 / 5}});
  b.transition("B", {{"p1", "a1"}}, {{"A", 1.0 / 15}, {"B", 4.0 / 5}, {"C", 2.0 / 15}});
  b.transition("B", {{"p1", "a2"}}, {{"A", 2.0 / 5}, {"B", 1.0 / 5}, {"C", 2.0 / 5}});
  // Only action 2 at C ever plays; action 1 reuses the same row to keep
  // the kernel total.
  b.transition("C", {{"p2", "a1"}}, {{"A", 2.0 / 5}, {"B", 2.0 / 5}, {"C", 1.0 / 5}});
  b.transition("C", {{"p2", "a2"}}, {{"A", 2.0 / 5}, {"B", 2.0 / 5}, {"C", 1.0 / 5}});
  b.reward("p1", "A", {{"p1", "a1"}}, 1.1 / 6.0);
  b.reward("p1", "A", {{"p1", "a2"}}, 1.0 / 6.0);
  return b.build();
}

// Closed-form V_1(A) for make_appendix_a() along the mixing segment.
inline double appendix_a_v1(double l) {
  return (63.0 - 37.0 * l) * (1.0 + 0.1 * l) /
         (4.0 * l * l - 84.0 * l + 147.0);
}

// The profile lambda * (action 1 at A, B) + (1 - lambda) * (action 2
// everywhere); player 2 plays action 2 at C throughout.
inline sg::Strategy appendix_a_profile(const sg::GameSpec& g, double lambda) {
  sg::Strategy base = sg::pure_strategy(g, [](int, int) { return 1; });
  std::vector<std::vector<double>> alt(g.num_states());
  for (int s = 0; s < g.num_states(); ++s)
    if (g.action_count(0, s) > 0) alt[s] = {1.0, 0.0};
  return sg::mix_strategy(g, base, 0, alt, lambda);
}

// Pure profile named by per-player action index at every controlled state.
inline sg::Strategy pure_everywhere(const sg::GameSpec& g, int action) {
  return sg::pure_strategy(g, [action](int, int) { return action; });
}

// Steps from (from, action) until `to` along deterministic transitions
// (the shape dummy chains expose); -1 when a row is not a point mass or
// the walk runs longer than the state count.
inline int walk_length(const sg::GameSpec& g, int from, int action, int to) {
  int s = from, a = action, steps = 0;
  for (;;) {
    const auto& row = g.states[s].p[a];
    int next = -1;
    for (int t = 0; t < g.num_states(); ++t)
      if (row[t] > 0.5) next = t;
    if (next < 0) return -1;
    ++steps;
    if (next == to) return steps;
    if (steps > g.num_states()) return -1;
    s = next;
    a = 0;
  }
}

}  // namespace sgtest
