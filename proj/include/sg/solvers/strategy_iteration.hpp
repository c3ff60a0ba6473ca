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

#ifndef SG_SOLVERS_STRATEGY_ITERATION_HPP_
#define SG_SOLVERS_STRATEGY_ITERATION_HPP_

// Strategy iteration for fixed-sign local-reward O-TBSGs.  Own-state
// rewards are padded away from zero by (1-gamma)eps/2 so that the
// potential log(prod_i rtilde_i^{pi_i}(s_i) / det(I - gamma P^pi))
// gains at least log(1 + (1-gamma)eps/2) per accepted switch; a profile
// with no eps/2-improving deviation in the padded game is an eps-NE of
// the original game under the own-state utilities.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/solvers/result.hpp"

namespace sg {

// Copies `g` with own-state rewards clamped away from zero:
// max(r, (1-gamma)eps/2) when non-negative, min(r, -(1-gamma)eps/2)
// when non-positive.
inline GameSpec pad_local_rewards(const GameSpec& g, double eps,
                                  bool non_negative) {
  GameSpec padded = g;
  double floor_mag = (1.0 - g.discount.gamma) * eps / 2.0;
  for (int i = 0; i < g.num_players(); ++i) {
    int s = g.own_state(i);
    if (s < 0) continue;
    for (auto& row : padded.states[s].r) {
      row[i] = non_negative ? std::max(row[i], floor_mag)
                            : std::min(row[i], -floor_mag);
    }
  }
  return padded;
}

namespace detail {

// log(prod_i rtilde_i^{pi_i}(s_i)) - log det(I - gamma P^pi).  Only
// meaningful while rewards are strictly fixed-sign; the magnitude of
// the own-state reward enters so the sign cancels in differences.
inline double locreward_potential(const GameSpec& padded, const Strategy& pi) {
  InducedChain chain = induced_chain(padded, pi);
  int S = padded.num_states();
  Eigen::MatrixXd M =
      Eigen::MatrixXd::Identity(S, S) - padded.discount.gamma * chain.P;
  double logdet = M.partialPivLu().matrixLU().diagonal().array().abs().log().sum();
  double num = 0.0;
  for (int i = 0; i < padded.num_players(); ++i) {
    int s = padded.own_state(i);
    num += std::log(std::abs(chain.r(s, i)));
  }
  return num - logdet;
}

}  // namespace detail

// Upper bound on accepted switches for `strategy_iteration` at accuracy
// `eps`: n log(2(1+gamma)/((1-gamma)^2 eps)) / log(1 + (1-gamma)eps/2).
inline double strategy_iteration_switch_bound(const GameSpec& g, double eps) {
  double gamma = g.discount.gamma;
  double range = 2.0 * (1.0 + gamma) / ((1.0 - gamma) * (1.0 - gamma) * eps);
  return g.num_players() * std::log(range) /
         std::log1p((1.0 - gamma) * eps / 2.0);
}

// Single-switch strategy iteration (shared ascent for both reward signs).
// Starts from every player's first action; each iteration accepts the
// first deviation, scanning players in index order and actions in
// ascending order, whose padded own-state value gains at least eps/2.
inline SolveResult strategy_iteration(const GameSpec& g, double eps) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "strategy_iteration requires discounted mode");
  GameClass cls = classify_game(g);
  if (!cls.is_otbsg || !cls.is_locreward)
    fail("WrongClass", "strategy_iteration needs a local-reward O-TBSG");
  if (cls.reward_sign != RewardSign::kNonNegative &&
      cls.reward_sign != RewardSign::kNonPositive &&
      cls.reward_sign != RewardSign::kZero)
    fail("WrongClass", "strategy_iteration needs fixed-sign rewards");
  bool non_negative = cls.reward_sign != RewardSign::kNonPositive;
  GameSpec padded = pad_local_rewards(g, eps, non_negative);
  int n = g.num_players();

  Strategy pi = first_action_strategy(g);
  SolveResult res;
  res.method = "strategy-iter";
  res.potential_trace.push_back(detail::locreward_potential(padded, pi));

  std::vector<double> hat(n);  // padded own-state values of the incumbent
  {
    ValueProfile vp = value_function(padded, pi);
    for (int i = 0; i < n; ++i) hat[i] = vp.V[i][g.own_state(i)];
  }

  long max_switches =
      static_cast<long>(std::ceil(strategy_iteration_switch_bound(g, eps))) +
      16;
  for (long it = 0;; ++it) {
    if (it > max_switches)
      fail("NoConvergence", "strategy_iteration exceeded its switch bound");
    bool switched = false;
    for (int i = 0; i < n && !switched; ++i) {
      int s = g.own_state(i);
      int m = g.action_count(i, s);
      for (int a = 0; a < m && !switched; ++a) {
        if (pi.dist[i][s][a] == 1.0) continue;
        Strategy cand = pi;
        std::fill(cand.dist[i][s].begin(), cand.dist[i][s].end(), 0.0);
        cand.dist[i][s][a] = 1.0;
        ValueProfile vp = value_function(padded, cand);
        if (vp.V[i][s] >= hat[i] + eps / 2.0) {
          pi = std::move(cand);
          for (int j = 0; j < n; ++j) hat[j] = vp.V[j][g.own_state(j)];
          res.potential_trace.push_back(detail::locreward_potential(padded, pi));
          res.iterations += 1;
          switched = true;
        }
      }
    }
    if (!switched) break;
  }

  res.strategy = pi;
  res.certificate = deviation_gap(g, pi, QChoice{QKind::kOwnState, {}}, eps);
  return res;
}

}  // namespace sg

#endif  // SG_SOLVERS_STRATEGY_ITERATION_HPP_
