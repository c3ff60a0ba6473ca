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

#ifndef SG_SOLVERS_BACKWARD_INDUCTION_HPP_
#define SG_SOLVERS_BACKWARD_INDUCTION_HPP_

// Finite-horizon backward induction for turn-based games.  Unrolling
// H = ceil((1/(1-gamma)) ln(1/((1-gamma)eps))) steps bounds the discarded
// tail by gamma^H/(1-gamma) <= eps/2, so playing the per-step greedy
// policies (deepest backup first) is an eps-NE among non-stationary
// strategies.

#include <cmath>
#include <vector>

#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/solvers/result.hpp"

namespace sg {

inline int backward_induction_horizon(double gamma, double eps) {
  double h = std::ceil(std::log(1.0 / ((1.0 - gamma) * eps)) / (1.0 - gamma));
  return h < 1.0 ? 1 : static_cast<int>(h);
}

inline SolveResult backward_induction(const GameSpec& g, double eps) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "backward_induction requires discounted mode");
  GameClass cls = classify_game(g);
  if (!cls.is_tbsg)
    fail("NotTurnBased", "backward induction needs one controller per state");
  int S = g.num_states(), n = g.num_players();
  double gamma = g.discount.gamma;
  int H = backward_induction_horizon(gamma, eps);

  // V[i][s] of the h-step unrolled game; every player's Q is needed at
  // every state because the controller's choice moves everyone's value.
  std::vector<std::vector<double>> V(n, std::vector<double>(S, 0.0));
  std::vector<std::vector<int>> chosen(H, std::vector<int>(S, 0));
  std::vector<double> q(n);
  for (int h = 0; h < H; ++h) {
    std::vector<std::vector<double>> next(n, std::vector<double>(S, 0.0));
    for (int s = 0; s < S; ++s) {
      const auto& st = g.states[s];
      int c = st.controllers[0];
      int best = -1;
      double best_q = 0.0;
      std::vector<double> best_all(n);
      for (int a = 0; a < st.joint_count(); ++a) {
        for (int i = 0; i < n; ++i) {
          q[i] = st.r[a][i];
          for (int s2 = 0; s2 < S; ++s2)
            q[i] += gamma * st.p[a][s2] * V[i][s2];
        }
        if (best < 0 || q[c] > best_q) {  // ties keep the lowest index
          best = a;
          best_q = q[c];
          best_all = q;
        }
      }
      chosen[h][s] = best;
      for (int i = 0; i < n; ++i) next[i][s] = best_all[i];
    }
    V = next;
  }

  SolveResult res;
  res.method = "bi";
  res.is_nonstationary = true;
  res.horizon = H;
  res.iterations = H;
  // Step t of play uses the deepest remaining backup: bar pi^t = pi^{H-t+1}.
  for (int h = H - 1; h >= 0; --h) {
    res.nonstationary.steps.push_back(
        pure_strategy(g, [&](int, int s) { return chosen[h][s]; }));
  }
  res.certificate = nonstationary_certify(g, res.nonstationary, eps);
  return res;
}

}  // namespace sg

#endif  // SG_SOLVERS_BACKWARD_INDUCTION_HPP_
