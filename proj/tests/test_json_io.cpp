// Copyright 2026 The sg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/json_io.hpp"

using sg::GameSpec;
using sg::Json;
using sg::Strategy;

// ---------------------------------------------------------------------------
// Game documents

TEST_CASE("game document key order and sparsity") {
  Json doc = sg::game_to_json(sgtest::make_g2());
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"players", "states", "controllers",
                                         "actions", "transitions", "rewards",
                                         "discount"});
  CHECK(doc["players"] == 2);
  CHECK(doc["states"] == Json::array({"s1", "s2"}));
  // Deterministic rows keep a single target; zero rewards are dropped.
  REQUIRE(doc["transitions"].size() == 4);
  for (const auto& row : doc["transitions"])
    CHECK(row["dist"].size() == 1);
  CHECK(doc["rewards"].size() == 4);
  CHECK(doc["discount"]["mode"] == "discounted");
  CHECK(doc["discount"]["gamma"] == 0.5);
}

TEST_CASE("game documents round-trip exactly") {
  for (const GameSpec& g :
       {sgtest::make_g2(), sgtest::make_g2_negated(), sgtest::make_appendix_a()}) {
    Json doc = sg::game_to_json(g);
    GameSpec back = sg::game_from_json(doc);
    CHECK(sg::games_identical(g, back));
    // Identical games emit byte-identical documents.
    CHECK(sg::game_to_json(back).dump() == doc.dump());
  }
}

TEST_CASE("parsing survives a serialize-parse-serialize cycle via text") {
  GameSpec g = sgtest::make_appendix_a();
  std::string text = sg::game_to_json(g).dump(2);
  GameSpec back = sg::game_from_json(Json::parse(text));
  CHECK(sg::games_identical(g, back));
}

TEST_CASE("unknown top-level keys are ignored") {
  Json doc = sg::game_to_json(sgtest::make_g2());
  doc["metadata"] = {{"source", "unit test"}};
  doc["comment"] = "extra";
  CHECK(sg::games_identical(sg::game_from_json(doc), sgtest::make_g2()));
}

TEST_CASE("game parse errors are structural") {
  const Json good = sg::game_to_json(sgtest::make_g2());
  auto reject = [](Json doc) {
    CHECK_THROWS_AS(sg::game_from_json(doc), sg::SgError);
  };

  Json doc = good;
  doc.erase("transitions");
  reject(doc);

  doc = good;
  doc["players"] = 3;
  reject(doc);

  doc = good;
  doc["actions"]["p1"]["nowhere"] = Json::array({"stay"});
  reject(doc);

  doc = good;
  doc["transitions"][0]["joint"]["p2"] = "stay";  // p2 does not control s1
  reject(doc);

  doc = good;
  doc["transitions"].push_back(doc["transitions"][0]);  // duplicate row
  reject(doc);

  doc = good;
  doc["transitions"][0]["dist"] = {{"elsewhere", 1.0}};
  reject(doc);

  doc = good;
  doc["transitions"].erase(3);  // one joint action left uncovered
  reject(doc);

  doc = good;
  doc["rewards"].push_back(doc["rewards"][0]);  // duplicate reward row
  reject(doc);

  doc = good;
  doc["discount"] = {{"mode", "geometric"}};
  reject(doc);

  doc = good;
  doc["discount"] = {{"mode", "absorbing"}, {"absorbing_state", "s9"}};
  reject(doc);
}

TEST_CASE("near-miss transition rows are renormalized") {
  Json doc = sg::game_to_json(sgtest::make_g2());
  doc["transitions"][0]["dist"]["s1"] = 1.0 + 5e-10;
  GameSpec g = sg::game_from_json(doc);
  CHECK(sg::validate_game(g).ok());
  CHECK(g.states[0].p[0][0] == 1.0);

  // Beyond the 1e-9 window the defect is preserved for validation.
  doc["transitions"][0]["dist"]["s1"] = 1.0 + 5e-6;
  g = sg::game_from_json(doc);
  CHECK_FALSE(sg::validate_game(g).ok());
  CHECK_FALSE(sg::validate_game(g).structurally_sound());
}

TEST_CASE("rewards are optional and default to zero") {
  Json doc = sg::game_to_json(sgtest::make_g2());
  doc.erase("rewards");
  GameSpec g = sg::game_from_json(doc);
  for (const auto& st : g.states)
    for (const auto& row : st.r)
      for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("absorbing and average modes round-trip") {
  sg::GameBuilder b;
  b.absorbing("sink");
  b.control("p", "s", {"go"});
  b.control("stopper", "sink", {"wait"});
  b.transition("s", {{"p", "go"}}, {{"s", 0.5}, {"sink", 0.5}});
  b.transition("sink", {{"stopper", "wait"}}, {{"sink", 1.0}});
  b.reward("p", "s", {{"p", "go"}}, 1.0);
  GameSpec g = b.build();
  Json doc = sg::game_to_json(g);
  CHECK(doc["discount"]["mode"] == "absorbing");
  CHECK(doc["discount"]["absorbing_state"] == "sink");
  CHECK(sg::games_identical(sg::game_from_json(doc), g));

  sg::GameBuilder avg;
  avg.average();
  avg.control("p", "s", {"go"});
  avg.transition("s", {{"p", "go"}}, {{"s", 1.0}});
  GameSpec h = avg.build();
  Json hdoc = sg::game_to_json(h);
  CHECK(hdoc["discount"] == Json{{"mode", "average"}});
  CHECK(sg::games_identical(sg::game_from_json(hdoc), h));
}

// ---------------------------------------------------------------------------
// Strategy documents

TEST_CASE("strategy documents round-trip") {
  GameSpec g = sgtest::make_g2();
  Strategy pi = sg::uniform_strategy(g);
  pi.dist[0][0] = {0.25, 0.75};
  Json doc = sg::strategy_to_json(g, pi);
  CHECK(doc.begin().key() == "schema_version");
  CHECK(doc["schema_version"] == 1);
  REQUIRE(doc["strategy"].size() == 2);
  CHECK(doc["strategy"][0]["player"] == "p1");
  CHECK(doc["strategy"][0]["state"] == "s1");
  CHECK(doc["strategy"][0]["dist"]["stay"] == 0.25);

  Strategy back = sg::strategy_from_json(g, doc);
  CHECK(back.dist == pi.dist);
}

TEST_CASE("strategy parsing rejects malformed documents") {
  GameSpec g = sgtest::make_g2();
  const Json good = sg::strategy_to_json(g, sg::uniform_strategy(g));
  auto reject = [&](Json doc) {
    CHECK_THROWS_AS(sg::strategy_from_json(g, doc), sg::SgError);
  };

  Json doc = good;
  doc["strategy"].erase(1);  // p2's row missing
  reject(doc);

  doc = good;
  doc["strategy"].push_back(doc["strategy"][0]);
  reject(doc);

  doc = good;
  doc["strategy"][0]["dist"] = {{"teleport", 1.0}};
  reject(doc);

  doc = good;
  doc["strategy"][0]["state"] = "s2";  // p1 does not control s2
  reject(doc);

  doc = good;
  doc["strategy"][0]["player"] = "p9";
  reject(doc);
}

TEST_CASE("near-miss strategy rows are renormalized") {
  GameSpec g = sgtest::make_g2();
  Json doc = sg::strategy_to_json(g, sg::uniform_strategy(g));
  doc["strategy"][0]["dist"]["stay"] = 0.5 + 4e-10;
  Strategy pi = sg::strategy_from_json(g, doc);
  CHECK_NOTHROW(sg::check_strategy(g, pi));

  // A row off by more than 1e-9 is kept verbatim and fails the check.
  doc["strategy"][0]["dist"]["stay"] = 0.5 + 1e-6;
  pi = sg::strategy_from_json(g, doc);
  CHECK_THROWS_AS(sg::check_strategy(g, pi), sg::SgError);
}

TEST_CASE("nonstationary strategies round-trip") {
  GameSpec g = sgtest::make_g2();
  sg::NonStationaryStrategy bar;
  bar.steps = {sgtest::pure_everywhere(g, 0), sgtest::pure_everywhere(g, 1),
               sg::uniform_strategy(g)};
  Json doc = sg::nonstationary_to_json(g, bar);
  CHECK(doc.begin().key() == "schema_version");
  REQUIRE(doc["steps"].size() == 3);
  sg::NonStationaryStrategy back = sg::nonstationary_from_json(g, doc);
  REQUIRE(back.steps.size() == 3);
  for (size_t h = 0; h < 3; ++h) CHECK(back.steps[h].dist == bar.steps[h].dist);
  CHECK_THROWS_AS(sg::nonstationary_from_json(g, Json::object()), sg::SgError);
}

// ---------------------------------------------------------------------------
// Report documents

TEST_CASE("value profile document shape") {
  GameSpec g = sgtest::make_g2();
  auto vp = sg::value_function(g, sgtest::pure_everywhere(g, 0));
  Json doc = sg::value_profile_to_json(g, vp);
  REQUIRE(doc["values"].size() == 4);  // player x state
  CHECK(doc["values"][0]["player"] == "p1");
  CHECK(doc["values"][0]["value"] == 2.0);
  CHECK(doc["u"]["p1"] == 1.0);
  CHECK(doc["upsilon"]["p1"] == 2.0);
  CHECK(doc["q"].size() == 2);
  CHECK(doc["residual"].get<double>() <= 1e-10);
}

TEST_CASE("certificate document shape") {
  GameSpec g = sgtest::make_g2_negated();
  auto cert = sg::deviation_gap(g, sgtest::pure_everywhere(g, 0),
                                sg::natural_q(g), 0.5);
  Json doc = sg::certificate_to_json(g, cert);
  CHECK(doc["mode"] == "deviation");
  CHECK(doc["epsilon"] == 0.5);
  CHECK(doc["max_gap"].get<double>() == Catch::Approx(1.0).margin(1e-9));
  CHECK(doc["pass"] == false);
  CHECK(doc["player_gaps"].size() == 2);
  REQUIRE(doc.contains("witness"));
  CHECK(doc["witness"]["action"] == "move");
}

TEST_CASE("validation document shape") {
  Json doc = sg::validation_to_json(sg::validate_game(sgtest::make_g2()));
  CHECK(doc["valid"] == true);
  CHECK(doc["issues"].empty());

  GameSpec g = sgtest::make_g2(1.5);  // reward outside [-1, 1]
  doc = sg::validation_to_json(sg::validate_game(g));
  CHECK(doc["valid"] == false);
  REQUIRE_FALSE(doc["issues"].empty());
  CHECK(doc["issues"][0]["severity"] == "range");
}

// ---------------------------------------------------------------------------
// Circuits and graphs

TEST_CASE("circuit documents round-trip") {
  sg::CircuitSpec c;
  c.nodes = {"x", "y", "z"};
  sg::Gate g1;
  g1.kind = sg::GateKind::kMul;
  g1.alpha = 0.5;
  g1.in = {"x"};
  g1.out = "y";
  sg::Gate g2;
  g2.kind = sg::GateKind::kSum;
  g2.in = {"x", "y"};
  g2.out = "z";
  c.gates = {g1, g2};

  Json doc = sg::circuit_to_json(c);
  CHECK(doc["nodes"] == Json::array({"x", "y", "z"}));
  REQUIRE(doc["gates"].size() == 2);
  CHECK(doc["gates"][0]["kind"] == "mul");
  CHECK(doc["gates"][0]["alpha"] == 0.5);
  CHECK_FALSE(doc["gates"][1].contains("alpha"));

  sg::CircuitSpec back = sg::circuit_from_json(doc);
  CHECK(back.nodes == c.nodes);
  REQUIRE(back.gates.size() == 2);
  CHECK(back.gates[0].kind == sg::GateKind::kMul);
  CHECK(back.gates[0].alpha == 0.5);
  CHECK(back.gates[1].in == std::vector<std::string>{"x", "y"});

  doc["gates"][0]["kind"] = "xor";
  CHECK_THROWS_AS(sg::circuit_from_json(doc), sg::SgError);
  CHECK_THROWS_AS(sg::circuit_from_json(Json{{"nodes", Json::array()}}),
                  sg::SgError);
}

TEST_CASE("graph documents round-trip") {
  sg::DirectedGraph g;
  g.vertices = {"1", "2", "3"};
  g.edges = {{"1", "2"}, {"2", "3"}};
  Json doc = sg::graph_to_json(g);
  CHECK(doc["vertices"].size() == 3);
  CHECK(doc["edges"][0] == Json::array({"1", "2"}));
  sg::DirectedGraph back = sg::graph_from_json(doc);
  CHECK(back.vertices == g.vertices);
  CHECK(back.edges == g.edges);

  doc["edges"][0] = Json::array({"1"});
  CHECK_THROWS_AS(sg::graph_from_json(doc), sg::SgError);
  CHECK_THROWS_AS(sg::graph_from_json(Json{{"vertices", Json::array()}}),
                  sg::SgError);
}
