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

#ifndef SG_REDUCTIONS_DISCOUNT_HPP_
#define SG_REDUCTIONS_DISCOUNT_HPP_

// Discount-criterion conversions.  Blending every transition with an
// escape hatch to a fresh absorbing state at rate 1 - gamma/gamma'
// reproduces gamma-discounted values exactly under the coarser discount
// gamma' (gamma' = 1 gives the absorbing criterion).  Average-reward
// games convert to discounted ones through the mixing time.

#include <string>
#include <utility>
#include <vector>

#include "sg/game.hpp"

namespace sg {

struct AugmentedGame {
  GameSpec game;
  int absorb_state = -1;
  int absorb_player = -1;
};

// gamma < gamma' <= 1 required; values are preserved exactly per player
// and state, with the fresh state worth zero.
inline AugmentedGame discounted_to_absorbing(const GameSpec& g,
                                             double gamma_prime) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "input must use the discounted criterion");
  double gamma = g.discount.gamma;
  if (!(gamma_prime > gamma && gamma_prime <= 1.0))
    fail("BadDiscountPair", "need gamma < gamma' <= 1");

  AugmentedGame out;
  GameSpec& h = out.game;
  h = g;
  int n = g.num_players(), S = g.num_states();
  std::string sname = "absorb";
  while (h.state_index(sname) >= 0) sname += "_";
  std::string pname = "stopper";
  while (h.player_index(pname) >= 0) pname += "_";
  out.absorb_state = S;
  out.absorb_player = n;
  h.player_names.push_back(pname);

  double keep = gamma / gamma_prime;
  for (auto& st : h.states) {
    for (auto& row : st.p) {
      for (double& x : row) x *= keep;
      row.push_back(1.0 - keep);
    }
    for (auto& row : st.r) row.push_back(0.0);
  }
  StateSpec sink;
  sink.name = sname;
  sink.controllers = {n};
  sink.action_counts = {1};
  sink.p = {std::vector<double>(S + 1, 0.0)};
  sink.p[0][S] = 1.0;
  sink.r = {std::vector<double>(n + 1, 0.0)};
  h.states.push_back(std::move(sink));

  for (auto& per_player : h.actions) per_player.resize(S + 1);
  h.actions.emplace_back(S + 1);
  h.actions[n][S] = {"a"};

  if (gamma_prime < 1.0) {
    h.discount.mode = DiscountMode::kDiscounted;
    h.discount.gamma = gamma_prime;
    h.discount.absorbing_state = -1;
  } else {
    h.discount.mode = DiscountMode::kAbsorbing;
    h.discount.gamma = 0.0;
    h.discount.absorbing_state = S;
  }
  return out;
}

// Original strategy plus the stopper's forced action.
inline Strategy push_strategy(const AugmentedGame& aug, const GameSpec& base,
                              const Strategy& pi) {
  check_strategy(base, pi);
  Strategy out = make_strategy_shell(aug.game);
  for (int i = 0; i < base.num_players(); ++i)
    for (int s = 0; s < base.num_states(); ++s)
      out.dist[i][s] = pi.dist[i][s];
  out.dist[aug.absorb_player][aug.absorb_state] = {1.0};
  return out;
}

inline Strategy pull_strategy(const AugmentedGame& aug, const GameSpec& base,
                              const Strategy& pih) {
  check_strategy(aug.game, pih);
  Strategy out = make_strategy_shell(base);
  for (int i = 0; i < base.num_players(); ++i)
    for (int s = 0; s < base.num_states(); ++s)
      out.dist[i][s] = pih.dist[i][s];
  return out;
}

struct AverageReductionAdvice {
  double gamma = 0.0;
  // Certifying the output at certify_eps = eps/(3(1-gamma)) certifies the
  // input at eps; per-pair average and scaled discounted values differ by
  // at most value_gap_bound = 3(1-gamma) t_mix.
  double certify_eps = 0.0;
  double value_gap_bound = 0.0;
};

struct AverageReduction {
  GameSpec game;
  AverageReductionAdvice advice;
};

// Same game under discount 1 - eps/(9 t_mix).
inline AverageReduction average_to_discounted(const GameSpec& g, double t_mix,
                                              double eps) {
  if (g.discount.mode != DiscountMode::kAverage)
    fail("InvalidGame", "input must use the average criterion");
  if (!(t_mix >= 1.0)) fail("InvalidGame", "mixing time must be at least 1");
  if (!(eps > 0.0)) fail("InvalidGame", "accuracy must be positive");
  double gamma = 1.0 - eps / (9.0 * t_mix);
  if (!(gamma > 0.0 && gamma < 1.0))
    fail("InvalidGame", "eps/(9 t_mix) must lie in (0, 1)");
  AverageReduction out;
  out.game = g;
  out.game.discount.mode = DiscountMode::kDiscounted;
  out.game.discount.gamma = gamma;
  out.advice.gamma = gamma;
  out.advice.certify_eps = eps / (3.0 * (1.0 - gamma));
  out.advice.value_gap_bound = 3.0 * (1.0 - gamma) * t_mix;
  return out;
}

}  // namespace sg

#endif  // SG_REDUCTIONS_DISCOUNT_HPP_
