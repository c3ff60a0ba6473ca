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

#ifndef SG_BELLMAN_HPP_
#define SG_BELLMAN_HPP_

// One-step Bellman errors of a stationary profile.  For player i at a
// controlled state s, Psi_{i,s}(a) is the value of deviating to action a
// for one step (co-controllers at s held at pi) minus the on-policy value;
// Upsilon is its positive part.  At any controlled state the on-policy
// average of Psi is zero, so max Upsilon measures distance from a
// best-response fixed point.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sg/evaluate.hpp"
#include "sg/game.hpp"

namespace sg {

struct BellmanEntry {
  int player;
  int state;
  int action;
  double psi;
  double upsilon;
};

struct BellmanReport {
  std::vector<BellmanEntry> entries;  // player-major, then state, then action
  double max_upsilon = 0.0;
};

// Values are recomputed from the strategy when not supplied.
inline BellmanReport bellman_errors(const GameSpec& g, const Strategy& pi,
                                    const ValueProfile* values = nullptr) {
  ValueProfile own;
  if (values == nullptr) {
    own = value_function(g, pi);
    values = &own;
  }
  BellmanReport rep;
  Eigen::VectorXd prow;
  double rdev;
  for (int i = 0; i < g.num_players(); ++i) {
    Eigen::VectorXd Vi(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) Vi(s) = values->V[i][s];
    for (int s = 0; s < g.num_states(); ++s) {
      int m = g.action_count(i, s);
      for (int a = 0; a < m; ++a) {
        one_step_deviation(g, pi, s, i, a, &prow, &rdev);
        double psi = rdev + g.discount.gamma * prow.dot(Vi) - Vi(s);
        double ups = std::max(psi, 0.0);
        rep.entries.push_back({i, s, a, psi, ups});
        rep.max_upsilon = std::max(rep.max_upsilon, ups);
      }
    }
  }
  return rep;
}

// Per-player maximum of Psi over the player's controlled entries.
inline std::vector<double> max_psi_per_player(const GameSpec& g,
                                              const BellmanReport& rep) {
  std::vector<double> out(g.num_players(),
                          -std::numeric_limits<double>::infinity());
  for (const auto& e : rep.entries)
    out[e.player] = std::max(out[e.player], e.psi);
  for (double& x : out)
    if (!std::isfinite(x)) x = 0.0;  // players controlling no state
  return out;
}

}  // namespace sg

#endif  // SG_BELLMAN_HPP_
