// Copyright 2026 The sg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Walks one small turn-based game through every solver in the library and
// prints the certificate each one returns.
//
// The game: two guards each patrol their own yard. A guard earns 1 per
// round spent in their own yard and may hold position or swap yards; the
// other guard's yard pays nothing. Holding forever is the unique pure
// equilibrium.

#include <cstdio>

#include "sg/sg.hpp"

namespace {

sg::GameSpec patrol_game() {
  sg::GameBuilder b;
  b.discounted(0.5);
  b.control("north", "yard_n", {"hold", "swap"});
  b.control("south", "yard_s", {"hold", "swap"});
  b.transition("yard_n", {{"north", "hold"}}, {{"yard_n", 1.0}});
  b.transition("yard_n", {{"north", "swap"}}, {{"yard_s", 1.0}});
  b.transition("yard_s", {{"south", "hold"}}, {{"yard_s", 1.0}});
  b.transition("yard_s", {{"south", "swap"}}, {{"yard_n", 1.0}});
  b.reward("north", "yard_n", {{"north", "hold"}}, 1.0);
  b.reward("north", "yard_n", {{"north", "swap"}}, 1.0);
  b.reward("south", "yard_s", {{"south", "hold"}}, 1.0);
  b.reward("south", "yard_s", {{"south", "swap"}}, 1.0);
  return b.build();
}

void print_certificate(const char* label, const sg::NeCertificate& cert) {
  std::printf("  %-22s %s  eps=%g  max deviation gap=%.3g\n", label,
              cert.pass ? "pass" : "FAIL", cert.epsilon, cert.max_gap);
}

}  // namespace

int main() {
  sg::GameSpec g = patrol_game();
  sg::GameClass cls = sg::classify_game(g);
  std::printf("patrol game: %d players, %d states, gamma=%g\n",
              g.num_players(), g.num_states(), g.discount.gamma);
  std::printf("  turn-based=%d  one-state-per-player=%d  rewards=%s\n",
              cls.is_tbsg, cls.is_ossg, sg::reward_sign_name(cls.reward_sign));

  // Exhaustive check of all four pure profiles.
  sg::EnumerationResult all = sg::pure_ne_enumerate(g, 0.25);
  std::printf("\nenumeration: %ld pure profiles, %d equilibria at slack 0.25\n",
              all.examined, static_cast<int>(all.equilibria.size()));
  for (const auto& eq : all.equilibria) {
    sg::ValueProfile vp = sg::value_function(g, eq.strategy);
    std::printf("  equilibrium with own-yard values %.3f / %.3f\n",
                vp.upsilon[0], vp.upsilon[1]);
  }

  sg::SolveResult si = sg::strategy_iteration(g, 0.05);
  std::printf("\nstrategy iteration: %s after %lld accepted switches\n",
              si.outcome.c_str(), si.iterations);
  print_certificate("deviation gap", si.certificate);

  sg::SolveResult bi = sg::backward_induction(g, 0.1);
  std::printf("\nbackward induction: plan over %d rounds\n", bi.horizon);
  print_certificate("per-round slack", bi.certificate);

  sg::SolveResult br = sg::brouwer_fixed_point_solve(g, sg::BrouwerMode::kValue);
  std::printf("\nfixed-point iteration: residual %.3g after %lld rounds "
              "(implies eps <= %.3g)\n",
              br.fixed_point_residual, br.iterations, br.implied_epsilon);
  print_certificate("deviation gap", br.certificate);

  sg::Strategy hold = sg::first_action_strategy(g);
  sg::ValueProfile vp = sg::value_function(g, hold);
  std::printf("\nhold/hold values per yard:\n");
  for (int i = 0; i < g.num_players(); ++i)
    std::printf("  %-6s V=(%.3f, %.3f)  own-yard value %.3f\n",
                g.player_names[i].c_str(), vp.V[i][0], vp.V[i][1],
                vp.upsilon[i]);
  return 0;
}
