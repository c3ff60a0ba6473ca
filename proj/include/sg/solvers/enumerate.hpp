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

#ifndef SG_SOLVERS_ENUMERATE_HPP_
#define SG_SOLVERS_ENUMERATE_HPP_

// Exhaustive scan of pure strategy profiles, keeping those whose
// deviation gap is at most delta.  The scan order is deterministic:
// controlled (player, state) pairs in player-major order, the last
// pair's action cycling fastest.

#include <string>
#include <utility>
#include <vector>

#include "sg/certify.hpp"
#include "sg/game.hpp"

namespace sg {

struct PureProfile {
  Strategy strategy;
  NeCertificate certificate;
};

struct EnumerationResult {
  std::vector<PureProfile> equilibria;
  long examined = 0;
};

inline EnumerationResult pure_ne_enumerate(const GameSpec& g, double delta,
                                           long budget = 1000000) {
  auto pairs = g.control_pairs();
  long total = 1;
  for (auto [i, s] : pairs) {
    total *= g.action_count(i, s);
    if (total > budget)
      fail("BudgetExceeded",
           "enumeration needs more than " + std::to_string(budget) +
               " profiles");
  }
  QChoice qc = natural_q(g);

  EnumerationResult out;
  std::vector<int> odo(pairs.size(), 0);
  for (long step = 0; step < total; ++step) {
    Strategy pi = make_strategy_shell(g);
    for (size_t k = 0; k < pairs.size(); ++k)
      pi.dist[pairs[k].first][pairs[k].second][odo[k]] = 1.0;
    NeCertificate cert = deviation_gap(g, pi, qc, delta);
    out.examined += 1;
    if (cert.pass) out.equilibria.push_back({std::move(pi), std::move(cert)});
    for (int k = static_cast<int>(pairs.size()) - 1; k >= 0; --k) {
      int m = g.action_count(pairs[k].first, pairs[k].second);
      if (++odo[k] < m) break;
      odo[k] = 0;
    }
  }
  return out;
}

}  // namespace sg

#endif  // SG_SOLVERS_ENUMERATE_HPP_
