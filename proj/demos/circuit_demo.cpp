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

// Embeds the one-gate circuit z = [x > y] as a game in which every node is
// the first-action probability of a dedicated player, then shows that
// reporting the comparison correctly is (close to) an equilibrium while a
// misreport opens a deviation gap above the certified margin. Finishes with
// the tour construction: a directed triangle whose cycle strategy is an
// exact equilibrium of the derived game.

#include <cstdio>

#include "sg/sg.hpp"

namespace {

void set_row(sg::Strategy& pi, const sg::NodeBinding& b, double p) {
  pi.dist[b.player][b.state] = {p, 1.0 - p};
}

}  // namespace

int main() {
  sg::CircuitSpec spec;
  spec.nodes = {"x", "y", "z"};
  sg::Gate cmp;
  cmp.kind = sg::GateKind::kGt;
  cmp.in = {"x", "y"};
  cmp.out = "z";
  spec.gates = {cmp};

  sg::GadgetBuild b = sg::gcircuit_build(spec, 0.5, 0.25);
  std::printf("comparison gadget: %d states, chain length L=%d\n",
              b.game.num_states(), b.params.L);
  std::printf("  margins: delta=%.3g (arithmetic), delta_cmp=%.3g "
              "(comparison)\n",
              b.params.delta, b.params.delta_cmp);
  for (const auto& [node, bind] : b.node_map)
    std::printf("  node %-2s -> player %d, state %d\n", node.c_str(),
                bind.player, bind.state);

  auto gap_for = [&](double px, double py, double pz) {
    sg::Strategy pi = sg::first_action_strategy(b.game);
    set_row(pi, b.binding("x"), px);
    set_row(pi, b.binding("y"), py);
    set_row(pi, b.binding("z"), pz);
    sg::QChoice own{sg::QKind::kOwnState, {}};
    return sg::deviation_gap(b.game, pi, own).max_gap;
  };
  std::printf("\ninputs x=0.8, y=0.2 (so x > y holds):\n");
  std::printf("  report z=1.0: max deviation gap %.3g\n",
              gap_for(0.8, 0.2, 1.0));
  std::printf("  report z=0.0: max deviation gap %.3g, above delta_cmp\n",
              gap_for(0.8, 0.2, 0.0));

  sg::DirectedGraph tri;
  tri.vertices = {"1", "2", "3"};
  tri.edges = {{"1", "2"}, {"2", "3"}, {"3", "1"}};
  sg::HamiltonianBuild h = sg::hamiltonian_game_build(tri, 0.5);
  sg::Strategy tour = sg::hamiltonian_cycle_strategy(h, h.vertices);
  sg::NeCertificate exact =
      sg::check_bellman_ne(h.game, tour, 0.0, sg::CertifyMode::kExact);
  std::printf("\ntriangle tour game: %d states, gap threshold delta=%.3g\n",
              h.game.num_states(), h.delta);
  std::printf("  tour strategy exact-equilibrium check: %s\n",
              exact.pass ? "pass" : "FAIL");
  sg::ValueProfile vp = sg::evaluate_strategy(h.game, tour);
  std::printf("  own-state value of the first long player: %.6f\n",
              vp.upsilon[0]);
  return 0;
}
