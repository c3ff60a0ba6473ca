// Copyright 2026 The sg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "sg/bellman.hpp"
#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/random.hpp"
#include "sg/reductions/copy.hpp"
#include "sg/reductions/discount.hpp"

using sg::GameSpec;
using sg::Strategy;

// ---------------------------------------------------------------------------
// Player copies: SimSG -> O-SSG

TEST_CASE("copy reduction shape on the two-state fixture") {
  GameSpec g = sgtest::make_g2();
  auto red = sg::simsg_to_ossg(g);
  const GameSpec& h = red.game;
  REQUIRE(h.num_players() == 4);
  CHECK(h.player_names == std::vector<std::string>{"p1@s1", "p1@s2",
                                                   "p2@s1", "p2@s2"});
  CHECK(h.num_states() == 2);
  // Every copy owns exactly the state it was made for.
  for (int i = 0; i < 2; ++i)
    for (int s = 0; s < 2; ++s)
      CHECK(h.own_state(red.copy_index(i, s)) == s);
  CHECK(sg::classify_game(h).is_ossg);
  // The owner copy keeps the original actions; foreign copies get noop.
  CHECK(h.action_count(red.copy_index(0, 0), 0) == 2);
  CHECK(h.actions[red.copy_index(1, 0)][0] ==
        std::vector<std::string>{"noop"});
  CHECK(red.base_of(red.copy_index(1, 1)) == std::pair<int, int>{1, 1});
}

TEST_CASE("push and pull are inverse on strategies") {
  sg::Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    GameSpec g = sg::random_simsg(rng, sg::uniform_int(rng, 1, 3),
                                  sg::uniform_int(rng, 1, 4));
    auto red = sg::simsg_to_ossg(g);
    Strategy pi = sg::random_strategy(rng, g);
    Strategy up = sg::push_strategy(red, g, pi);
    CHECK_NOTHROW(sg::check_strategy(red.game, up));
    Strategy back = sg::pull_strategy(red, g, up);
    REQUIRE(back.dist == pi.dist);  // bit-identical rows
  }
}

TEST_CASE("copied games preserve values entrywise") {
  sg::Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    GameSpec g = sg::random_simsg(rng, sg::uniform_int(rng, 1, 3),
                                  sg::uniform_int(rng, 1, 3));
    auto red = sg::simsg_to_ossg(g);
    Strategy pi = sg::random_strategy(rng, g);
    auto base = sg::value_function(g, pi);
    auto copy = sg::value_function(red.game, sg::push_strategy(red, g, pi));
    for (int i = 0; i < g.num_players(); ++i)
      for (int sc = 0; sc < g.num_states(); ++sc)
        for (int s = 0; s < g.num_states(); ++s)
          REQUIRE(std::abs(copy.V[red.copy_index(i, sc)][s] -
                           base.V[i][s]) <= 1e-12);
  }
}

TEST_CASE("copied games preserve Bellman errors entrywise") {
  sg::Rng rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    GameSpec g = sg::random_simsg(rng, sg::uniform_int(rng, 1, 3),
                                  sg::uniform_int(rng, 1, 3));
    auto red = sg::simsg_to_ossg(g);
    Strategy pi = sg::random_strategy(rng, g);
    Strategy up = sg::push_strategy(red, g, pi);
    auto base = sg::bellman_errors(g, pi);
    auto copy = sg::bellman_errors(red.game, up);
    // Base entry (i, s, a) corresponds to copy entry (copy(i, s), s, a).
    for (const auto& e : base.entries) {
      int who = red.copy_index(e.player, e.state);
      bool matched = false;
      for (const auto& c : copy.entries)
        if (c.player == who && c.state == e.state && c.action == e.action) {
          REQUIRE(std::abs(c.psi - e.psi) <= 1e-12);
          matched = true;
        }
      REQUIRE(matched);
    }
    REQUIRE(std::abs(copy.max_upsilon - base.max_upsilon) <= 1e-12);
  }
}

TEST_CASE("equilibria transfer through the copy reduction") {
  GameSpec g = sgtest::make_g2();
  auto red = sg::simsg_to_ossg(g);
  Strategy ne = sg::push_strategy(red, g, sgtest::pure_everywhere(g, 0));
  CHECK(sg::deviation_gap(red.game, ne).max_gap <= 1e-12);

  GameSpec neg = sgtest::make_g2_negated();
  auto redn = sg::simsg_to_ossg(neg);
  Strategy bad = sg::push_strategy(redn, neg, sgtest::pure_everywhere(neg, 0));
  CHECK(sg::deviation_gap(redn.game, bad).max_gap ==
        Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("copy reduction refuses structurally broken input") {
  GameSpec g = sgtest::make_g2();
  g.states[0].p[0] = {0.9, 0.0};
  CHECK_THROWS_AS(sg::simsg_to_ossg(g), sg::SgError);
}

// ---------------------------------------------------------------------------
// Discount adjustments

TEST_CASE("absorbing augmentation reshapes rows and names") {
  GameSpec g = sgtest::make_g2();
  auto aug = sg::discounted_to_absorbing(g, 0.75);
  const GameSpec& h = aug.game;
  REQUIRE(h.num_states() == 3);
  REQUIRE(h.num_players() == 3);
  CHECK(h.states[2].name == "absorb");
  CHECK(h.player_names[2] == "stopper");
  CHECK(h.discount.mode == sg::DiscountMode::kDiscounted);
  CHECK(h.discount.gamma == 0.75);
  // keep = gamma/gamma' = 2/3; stay row becomes [2/3, 0, 1/3].
  CHECK(h.states[0].p[0][0] == Catch::Approx(2.0 / 3).margin(1e-15));
  CHECK(h.states[0].p[0][2] == Catch::Approx(1.0 / 3).margin(1e-15));
  CHECK(h.states[0].r[0][2] == 0.0);
  CHECK(sg::validate_game(h).ok());
}

TEST_CASE("absorbing augmentation dedupes reserved names") {
  sg::GameBuilder b;
  b.discounted(0.5);
  b.control("stopper", "absorb", {"a"});
  b.transition("absorb", {{"stopper", "a"}}, {{"absorb", 1.0}});
  b.reward("stopper", "absorb", {{"stopper", "a"}}, 1.0);
  auto aug = sg::discounted_to_absorbing(b.build(), 1.0);
  CHECK(aug.game.states[1].name == "absorb_");
  CHECK(aug.game.player_names[1] == "stopper_");
}

TEST_CASE("gamma' below 1 preserves values exactly") {
  sg::Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    GameSpec g = sg::random_simsg(rng, sg::uniform_int(rng, 1, 3),
                                  sg::uniform_int(rng, 1, 4));
    auto aug = sg::discounted_to_absorbing(g, 0.75);
    Strategy pi = sg::random_strategy(rng, g);
    Strategy up = sg::push_strategy(aug, g, pi);
    auto base = sg::value_function(g, pi);
    auto lift = sg::value_function(aug.game, up);
    for (int i = 0; i < g.num_players(); ++i)
      for (int s = 0; s < g.num_states(); ++s)
        REQUIRE(std::abs(lift.V[i][s] - base.V[i][s]) <= 1e-9);
    REQUIRE(lift.V[0][aug.absorb_state] == 0.0);
    Strategy back = sg::pull_strategy(aug, g, up);
    REQUIRE(back.dist == pi.dist);
  }
}

TEST_CASE("gamma' = 1 matches the absorbing criterion") {
  sg::Rng rng(78);
  for (int trial = 0; trial < 30; ++trial) {
    GameSpec g = sg::random_tbsg(rng, 2, 3);
    auto aug = sg::discounted_to_absorbing(g, 1.0);
    REQUIRE(aug.game.discount.mode == sg::DiscountMode::kAbsorbing);
    Strategy pi = sg::random_strategy(rng, g);
    auto base = sg::value_function(g, pi);
    auto lift = sg::absorbing_value(aug.game, sg::push_strategy(aug, g, pi));
    for (int i = 0; i < g.num_players(); ++i)
      for (int s = 0; s < g.num_states(); ++s)
        REQUIRE(std::abs(lift.V[i][s] - base.V[i][s]) <= 1e-9);
  }
}

TEST_CASE("bad discount pairs are rejected") {
  GameSpec g = sgtest::make_g2();  // gamma = 0.5
  CHECK_THROWS_AS(sg::discounted_to_absorbing(g, 0.5), sg::SgError);
  CHECK_THROWS_AS(sg::discounted_to_absorbing(g, 0.4), sg::SgError);
  CHECK_THROWS_AS(sg::discounted_to_absorbing(g, 1.2), sg::SgError);
  auto aug = sg::discounted_to_absorbing(g, 1.0);
  CHECK_THROWS_AS(sg::discounted_to_absorbing(aug.game, 1.0), sg::SgError);
}

TEST_CASE("average-to-discounted advice constants") {
  sg::Rng rng(79);
  GameSpec g = sg::random_average_game(rng, 2, 2);
  auto red = sg::average_to_discounted(g, 1.0, 0.09);
  CHECK(red.game.discount.mode == sg::DiscountMode::kDiscounted);
  CHECK(red.advice.gamma == Catch::Approx(0.99).epsilon(1e-14));
  CHECK(red.game.discount.gamma == red.advice.gamma);
  CHECK(red.advice.certify_eps == Catch::Approx(3.0).epsilon(1e-12));
  CHECK(red.advice.value_gap_bound == Catch::Approx(0.03).epsilon(1e-12));

  CHECK_THROWS_AS(sg::average_to_discounted(g, 0.5, 0.09), sg::SgError);
  CHECK_THROWS_AS(sg::average_to_discounted(g, 1.0, 0.0), sg::SgError);
  CHECK_THROWS_AS(sg::average_to_discounted(g, 1.0, 10.0), sg::SgError);
  CHECK_THROWS_AS(
      sg::average_to_discounted(sgtest::make_g2(), 1.0, 0.09), sg::SgError);
}

TEST_CASE("average and scaled discounted values agree within the bound") {
  sg::Rng rng(80);
  int done = 0;
  while (done < 20) {
    GameSpec g = sg::random_average_game(rng, sg::uniform_int(rng, 1, 3),
                                         sg::uniform_int(rng, 2, 4));
    Strategy pi = sg::random_strategy(rng, g);
    auto chain = sg::induced_chain(g, pi);
    int t_mix = 0;
    try {
      t_mix = sg::mixing_time(chain.P, 10000);
    } catch (const sg::SgError&) {
      continue;  // not unichain under this profile; resample
    }
    auto avg = sg::average_reward_value(g, pi);
    auto red = sg::average_to_discounted(g, t_mix, 0.1);
    auto disc = sg::value_function(red.game, pi);
    double scale = 1.0 - red.advice.gamma;
    for (int i = 0; i < g.num_players(); ++i)
      for (int s = 0; s < g.num_states(); ++s)
        REQUIRE(std::abs(avg.V[i][s] - scale * disc.V[i][s]) <=
                red.advice.value_gap_bound + 1e-9);
    ++done;
  }
}
