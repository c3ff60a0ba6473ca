// Copyright 2026 The sg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/random.hpp"
#include "sg/solvers/backward_induction.hpp"
#include "sg/solvers/brouwer.hpp"
#include "sg/solvers/cycles.hpp"
#include "sg/solvers/enumerate.hpp"
#include "sg/solvers/strategy_iteration.hpp"

using sg::BrouwerMode;
using sg::GameBuilder;
using sg::GameSpec;
using sg::Strategy;

namespace {

GameSpec mixed_sign_g2() {
  GameBuilder b;
  b.discounted(0.5);
  b.control("p1", "s1", {"stay", "move"});
  b.control("p2", "s2", {"stay", "move"});
  b.transition("s1", {{"p1", "stay"}}, {{"s1", 1.0}});
  b.transition("s1", {{"p1", "move"}}, {{"s2", 1.0}});
  b.transition("s2", {{"p2", "stay"}}, {{"s2", 1.0}});
  b.transition("s2", {{"p2", "move"}}, {{"s1", 1.0}});
  b.reward("p1", "s1", {{"p1", "stay"}}, 1.0);
  b.reward("p1", "s1", {{"p1", "move"}}, 1.0);
  b.reward("p2", "s2", {{"p2", "stay"}}, -1.0);
  b.reward("p2", "s2", {{"p2", "move"}}, -1.0);
  return b.build();
}

double strategy_distance(const Strategy& a, const Strategy& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.dist.size(); ++i)
    for (size_t s = 0; s < a.dist[i].size(); ++s)
      for (size_t k = 0; k < a.dist[i][s].size(); ++k)
        d = std::max(d, std::abs(a.dist[i][s][k] - b.dist[i][s][k]));
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Backward induction

TEST_CASE("horizon formula") {
  CHECK(sg::backward_induction_horizon(0.5, 0.1) == 6);
  CHECK(sg::backward_induction_horizon(0.5, 0.01) == 11);
  CHECK(sg::backward_induction_horizon(0.9, 0.1) == 47);
}

TEST_CASE("backward induction solves the two-state fixture") {
  GameSpec g = sgtest::make_g2();
  auto res = sg::backward_induction(g, 0.1);
  CHECK(res.method == "bi");
  CHECK(res.is_nonstationary);
  CHECK(res.horizon == 6);
  CHECK(res.nonstationary.steps.size() == 6);
  CHECK(res.outcome == "ok");
  CHECK(res.certificate.pass);
  CHECK(res.certificate.epsilon == 0.1);
  // Uniform rewards at the own state: the final backup ties toward the
  // first action, so the last step plays stay/stay.
  const Strategy& last = res.nonstationary.steps.back();
  CHECK(last.dist[0][0] == std::vector<double>{1.0, 0.0});
  CHECK(last.dist[1][1] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("backward induction certifies on random turn-based games") {
  sg::Rng rng(808);
  for (int trial = 0; trial < 5; ++trial) {
    GameSpec g = sg::random_tbsg(rng, sg::uniform_int(rng, 1, 3),
                                 sg::uniform_int(rng, 2, 4));
    for (double eps : {0.1, 0.01}) {
      auto res = sg::backward_induction(g, eps);
      CHECK(res.horizon == sg::backward_induction_horizon(0.5, eps));
      CHECK(res.certificate.pass);
    }
  }
}

TEST_CASE("backward induction rejects simultaneous games") {
  GameBuilder b;
  b.discounted(0.5);
  b.control("p1", "s", {"a", "b"});
  b.control("p2", "s", {"x"});
  for (const char* a : {"a", "b"})
    b.transition("s", {{"p1", a}, {"p2", "x"}}, {{"s", 1.0}});
  GameSpec g = b.build();
  CHECK_THROWS_AS(sg::backward_induction(g, 0.1), sg::SgError);
}

// ---------------------------------------------------------------------------
// Strategy iteration

TEST_CASE("strategy iteration keeps the stay/stay equilibrium") {
  GameSpec g = sgtest::make_g2();
  auto res = sg::strategy_iteration(g, 0.05);
  CHECK(res.method == "strategy-iter");
  CHECK(res.iterations == 0);
  CHECK(res.strategy.dist[0][0] == std::vector<double>{1.0, 0.0});
  CHECK(res.certificate.pass);
  CHECK(res.certificate.max_gap <= 1e-10);
  CHECK(res.potential_trace.size() == 1);
}

TEST_CASE("strategy iteration escapes the negated trap") {
  GameSpec g = sgtest::make_g2_negated();
  auto res = sg::strategy_iteration(g, 0.05);
  CHECK(res.strategy.dist[0][0] == std::vector<double>{0.0, 1.0});
  CHECK(res.strategy.dist[1][1] == std::vector<double>{0.0, 1.0});
  CHECK(res.iterations == 2);
  CHECK(res.certificate.pass);
  // One potential sample per accepted switch, strictly increasing.
  REQUIRE(res.potential_trace.size() == 3);
  CHECK(res.potential_trace[1] > res.potential_trace[0]);
  CHECK(res.potential_trace[2] > res.potential_trace[1]);
}

TEST_CASE("strategy iteration respects its switch bound on random games") {
  sg::Rng rng(606060);
  double eps = 0.05;
  for (int trial = 0; trial < 20; ++trial) {
    sg::RandomGameOptions opt;
    opt.rewards = trial % 2 == 0 ? sg::RewardRange::kNonNegative
                                 : sg::RewardRange::kNonPositive;
    GameSpec g =
        sg::random_locreward_otbsg(rng, sg::uniform_int(rng, 1, 4), opt);
    auto res = sg::strategy_iteration(g, eps);
    CHECK(res.certificate.pass);
    CHECK(res.certificate.max_gap <= eps + 1e-10);
    CHECK(res.iterations <=
          static_cast<long>(
              std::ceil(sg::strategy_iteration_switch_bound(g, eps))));
    for (size_t k = 1; k < res.potential_trace.size(); ++k)
      CHECK(res.potential_trace[k] > res.potential_trace[k - 1]);
  }
}

TEST_CASE("strategy iteration rejects unsupported classes") {
  CHECK_THROWS_AS(sg::strategy_iteration(sgtest::make_appendix_a(), 0.05),
                  sg::SgError);  // player with two states
  CHECK_THROWS_AS(sg::strategy_iteration(mixed_sign_g2(), 0.05),
                  sg::SgError);  // mixed reward signs
}

// ---------------------------------------------------------------------------
// Cycle solvers for deterministic graph games

TEST_CASE("nonnegative rewards favor the shortest cycle") {
  GameSpec g = sgtest::make_g2();
  auto res = sg::cycle_ne_graph(g);
  CHECK(res.method == "cycle");
  CHECK(res.strategy.dist[0][0] == std::vector<double>{1.0, 0.0});
  CHECK(res.strategy.dist[1][1] == std::vector<double>{1.0, 0.0});
  CHECK(res.certificate.pass);
  CHECK(res.certificate.max_gap <= 1e-12);
  auto vp = sg::value_function(g, res.strategy);
  CHECK(vp.upsilon[0] == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("nonpositive rewards favor the longest cycle") {
  GameSpec g = sgtest::make_g2_negated();
  auto res = sg::cycle_ne_graph(g);
  CHECK(res.strategy.dist[0][0] == std::vector<double>{0.0, 1.0});
  CHECK(res.strategy.dist[1][1] == std::vector<double>{0.0, 1.0});
  CHECK(res.certificate.max_gap <= 1e-12);
  auto vp = sg::value_function(g, res.strategy);
  CHECK(vp.upsilon[0] == Catch::Approx(-4.0 / 3).margin(1e-12));
}

TEST_CASE("cycle solver agrees with exhaustive enumeration") {
  sg::Rng rng(133);
  for (int trial = 0; trial < 30; ++trial) {
    int n = sg::uniform_int(rng, 2, 5);
    auto sign = trial % 2 == 0 ? sg::RewardRange::kNonNegative
                               : sg::RewardRange::kNonPositive;
    GameSpec g = sg::random_graph_game(rng, n, 3, 0.5, sign);
    auto res = sg::cycle_ne_graph(g);
    REQUIRE(res.certificate.max_gap <= 1e-12);
    auto all = sg::pure_ne_enumerate(g, 1e-12);
    bool found = false;
    for (const auto& pe : all.equilibria)
      if (strategy_distance(pe.strategy, res.strategy) == 0.0) found = true;
    REQUIRE(found);
  }
}

TEST_CASE("cycle solver rejects stochastic games") {
  CHECK_THROWS_AS(sg::cycle_ne_graph(sgtest::make_appendix_a()), sg::SgError);
  CHECK_THROWS_AS(sg::cycle_ne_graph(mixed_sign_g2()), sg::SgError);
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

TEST_CASE("enumeration finds exactly the stay/stay equilibrium") {
  GameSpec g = sgtest::make_g2();
  auto out = sg::pure_ne_enumerate(g, 1e-9);
  CHECK(out.examined == 4);
  REQUIRE(out.equilibria.size() == 1);
  CHECK(out.equilibria[0].strategy.dist[0][0] ==
        std::vector<double>{1.0, 0.0});
  CHECK(out.equilibria[0].certificate.pass);

  GameSpec neg = sgtest::make_g2_negated();
  auto outn = sg::pure_ne_enumerate(neg, 1e-9);
  REQUIRE(outn.equilibria.size() == 1);
  CHECK(outn.equilibria[0].strategy.dist[0][0] ==
        std::vector<double>{0.0, 1.0});
}

TEST_CASE("enumeration enforces its budget") {
  GameSpec g = sgtest::make_g2();
  CHECK_THROWS_AS(sg::pure_ne_enumerate(g, 1e-9, 3), sg::SgError);
}

// ---------------------------------------------------------------------------
// Brouwer maps

TEST_CASE("both maps fix the stay/stay equilibrium") {
  GameSpec g = sgtest::make_g2();
  Strategy ne = sgtest::pure_everywhere(g, 0);
  CHECK(sg::brouwer_residual(g, ne, BrouwerMode::kValue) <= 1e-10);
  CHECK(sg::brouwer_residual(g, ne, BrouwerMode::kBellman) <= 1e-10);

  GameSpec neg = sgtest::make_g2_negated();
  Strategy mm = sgtest::pure_everywhere(neg, 1);
  CHECK(sg::brouwer_residual(neg, mm, BrouwerMode::kValue) <= 1e-10);
  CHECK(sg::brouwer_residual(neg, mm, BrouwerMode::kBellman) <= 1e-10);
}

TEST_CASE("non-equilibria move under both maps") {
  GameSpec g = sgtest::make_g2_negated();
  Strategy stay = sgtest::pure_everywhere(g, 0);  // gap 1 at both states
  CHECK(sg::brouwer_residual(g, stay, BrouwerMode::kValue) > 1e-8);
  CHECK(sg::brouwer_residual(g, stay, BrouwerMode::kBellman) > 1e-8);
}

TEST_CASE("value map requires one state per player") {
  GameSpec g = sgtest::make_appendix_a();
  Strategy pi = sg::uniform_strategy(g);
  CHECK_THROWS_AS(sg::brouwer_map(g, pi, BrouwerMode::kValue), sg::SgError);
  CHECK_NOTHROW(sg::brouwer_map(g, pi, BrouwerMode::kBellman));
}

TEST_CASE("map images are valid strategies") {
  sg::Rng rng(9090);
  for (int trial = 0; trial < 50; ++trial) {
    GameSpec g = sg::random_ossg(rng, sg::uniform_int(rng, 1, 3), 2);
    Strategy pi = sg::random_strategy(rng, g);
    for (auto mode : {BrouwerMode::kValue, BrouwerMode::kBellman})
      CHECK_NOTHROW(sg::check_strategy(g, sg::brouwer_map(g, pi, mode)));
  }
}

TEST_CASE("empirical Lipschitz constant stays under the bound") {
  sg::Rng rng(111);
  GameSpec g = sgtest::make_g2();
  for (auto mode : {BrouwerMode::kValue, BrouwerMode::kBellman}) {
    double bound = sg::brouwer_lipschitz_bound(g, mode);
    CHECK(bound == 1.0 + 4.0 * 4.0 * 4.0);  // A = 2, U = 2
    for (int trial = 0; trial < 30; ++trial) {
      Strategy a = sg::random_strategy(rng, g);
      Strategy b = sg::random_strategy(rng, g);
      double num = strategy_distance(sg::brouwer_map(g, a, mode),
                                     sg::brouwer_map(g, b, mode));
      double den = strategy_distance(a, b);
      if (den > 1e-12) CHECK(num <= bound * den + 1e-9);
    }
  }
}

TEST_CASE("implied epsilon follows the published constants") {
  GameSpec g = sgtest::make_g2();  // A = 2, U = rho = 2
  double ep = 1e-10;
  double value_want = (8.0 * 4.0 * 4.0 + 2.0 * 2.0 * 2.0) *
                      std::sqrt(ep * (1.0 + 2.0 * 2.0));
  CHECK(sg::brouwer_implied_epsilon(g, BrouwerMode::kValue, ep) ==
        Catch::Approx(value_want).epsilon(1e-12));
  double bell_want = 8.0 * 4.0 * 4.0 * std::sqrt(ep * 2.0);
  CHECK(sg::brouwer_implied_epsilon(g, BrouwerMode::kBellman, ep) ==
        Catch::Approx(bell_want).epsilon(1e-12));
}

TEST_CASE("damped fixed-point iteration converges on the fixture") {
  GameSpec g = sgtest::make_g2();
  for (auto mode : {BrouwerMode::kValue, BrouwerMode::kBellman}) {
    auto res = sg::brouwer_fixed_point_solve(g, mode);
    CHECK(res.outcome == "ok");
    CHECK(res.fixed_point_residual <= 1e-10);
    CHECK(res.certificate.max_gap <= 1e-6);
    // The iterate approaches the stay/stay equilibrium.
    CHECK(res.strategy.dist[0][0][0] > 0.99);
  }
}

TEST_CASE("fixed-point iteration reports non-convergence honestly") {
  GameSpec g = sgtest::make_g2();
  sg::BrouwerOptions opt;
  opt.max_iters = 5;
  auto res = sg::brouwer_fixed_point_solve(g, BrouwerMode::kValue, opt);
  CHECK(res.outcome == "no_convergence");
  CHECK(res.iterations == 5);
  CHECK(res.fixed_point_residual > 1e-10);
}
