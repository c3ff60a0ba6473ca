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

#ifndef SG_JSON_IO_HPP_
#define SG_JSON_IO_HPP_

// JSON formats.  Emission is canonical: fixed key order, entities in index
// order, zero transition/reward entries omitted, floats in their shortest
// round-trip form.  parse(emit(g)) reproduces g exactly, and identical
// inputs yield byte-identical documents.  Unknown top-level keys are
// ignored on parse so emitted documents may carry metadata.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"

namespace sg {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Game

inline Json game_to_json(const GameSpec& g) {
  Json doc;
  doc["players"] = g.num_players();
  doc["states"] = Json::array();
  for (const auto& st : g.states) doc["states"].push_back(st.name);

  Json controllers = Json::object();
  for (const auto& st : g.states) {
    Json list = Json::array();
    for (int c : st.controllers) list.push_back(g.player_names[c]);
    controllers[st.name] = std::move(list);
  }
  doc["controllers"] = std::move(controllers);

  Json actions = Json::object();
  for (int i = 0; i < g.num_players(); ++i) {
    Json per_state = Json::object();
    for (int s = 0; s < g.num_states(); ++s)
      if (!g.actions[i][s].empty()) per_state[g.states[s].name] = g.actions[i][s];
    actions[g.player_names[i]] = std::move(per_state);
  }
  doc["actions"] = std::move(actions);

  Json transitions = Json::array();
  Json rewards = Json::array();
  for (int s = 0; s < g.num_states(); ++s) {
    const auto& st = g.states[s];
    for (int j = 0; j < st.joint_count(); ++j) {
      auto a = g.decode_joint(s, j);
      Json joint = Json::object();
      for (size_t k = 0; k < st.controllers.size(); ++k) {
        int c = st.controllers[k];
        joint[g.player_names[c]] = g.actions[c][s][a[k]];
      }
      Json dist = Json::object();
      for (int s2 = 0; s2 < g.num_states(); ++s2)
        if (st.p[j][s2] != 0.0) dist[g.states[s2].name] = st.p[j][s2];
      Json row = Json::object();
      row["state"] = st.name;
      row["joint"] = joint;
      row["dist"] = std::move(dist);
      transitions.push_back(std::move(row));
      for (int i = 0; i < g.num_players(); ++i) {
        if (st.r[j][i] == 0.0) continue;
        Json rrow = Json::object();
        rrow["player"] = g.player_names[i];
        rrow["state"] = st.name;
        rrow["joint"] = joint;
        rrow["r"] = st.r[j][i];
        rewards.push_back(std::move(rrow));
      }
    }
  }
  doc["transitions"] = std::move(transitions);
  doc["rewards"] = std::move(rewards);

  Json discount = Json::object();
  switch (g.discount.mode) {
    case DiscountMode::kDiscounted:
      discount["mode"] = "discounted";
      discount["gamma"] = g.discount.gamma;
      break;
    case DiscountMode::kAbsorbing:
      discount["mode"] = "absorbing";
      discount["absorbing_state"] = g.states[g.discount.absorbing_state].name;
      break;
    case DiscountMode::kAverage:
      discount["mode"] = "average";
      break;
  }
  doc["discount"] = std::move(discount);
  return doc;
}

namespace detail {

inline const Json& need(const Json& doc, const char* key,
                        const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end())
    fail("InvalidGame", where + " is missing key \"" + key + "\"");
  return *it;
}

}  // namespace detail

// Parses the documented game schema.  Structural impossibilities (unknown
// identifiers, missing/duplicate rows) throw InvalidGame; numeric contract
// violations survive parsing so validate_game can report them, except that
// near-miss transition rows (off by <= 1e-9) are renormalized.
inline GameSpec game_from_json(const Json& doc) {
  if (!doc.is_object()) fail("InvalidGame", "game document is not an object");
  GameSpec g;

  const Json& actions = detail::need(doc, "actions", "game");
  if (!actions.is_object()) fail("InvalidGame", "\"actions\" must be an object");
  for (auto it = actions.begin(); it != actions.end(); ++it)
    g.player_names.push_back(it.key());
  int n = g.num_players();
  const Json& players = detail::need(doc, "players", "game");
  if (!players.is_number_integer() || players.get<int>() != n)
    fail("InvalidGame", "\"players\" does not match the actions table");

  const Json& states = detail::need(doc, "states", "game");
  if (!states.is_array()) fail("InvalidGame", "\"states\" must be an array");
  for (const auto& s : states) {
    StateSpec st;
    st.name = s.get<std::string>();
    g.states.push_back(std::move(st));
  }
  int S = g.num_states();
  if (S == 0) fail("InvalidGame", "game has no states");

  g.actions.assign(n, std::vector<std::vector<std::string>>(S));
  for (int i = 0; i < n; ++i) {
    const Json& per_state = actions.at(g.player_names[i]);
    if (!per_state.is_object())
      fail("InvalidGame", "actions for " + g.player_names[i] +
                              " must be an object");
    for (auto it = per_state.begin(); it != per_state.end(); ++it) {
      int s = g.state_index(it.key());
      if (s < 0) fail("InvalidGame", "unknown state in actions: " + it.key());
      for (const auto& a : it.value())
        g.actions[i][s].push_back(a.get<std::string>());
      if (g.actions[i][s].empty())
        fail("InvalidGame", "empty action list for " + g.player_names[i] +
                                " at " + it.key());
    }
  }

  const Json& controllers = detail::need(doc, "controllers", "game");
  for (int s = 0; s < S; ++s) {
    auto& st = g.states[s];
    auto it = controllers.find(st.name);
    std::vector<int> listed;
    if (it != controllers.end())
      for (const auto& pname : *it) {
        int i = g.player_index(pname.get<std::string>());
        if (i < 0)
          fail("InvalidGame",
               "unknown player in controllers: " + pname.get<std::string>());
        listed.push_back(i);
      }
    std::sort(listed.begin(), listed.end());
    for (int i : listed) {
      if (g.actions[i][s].empty())
        fail("InvalidGame", "controller " + g.player_names[i] + " of " +
                                st.name + " has no action list");
      st.controllers.push_back(i);
      st.action_counts.push_back(static_cast<int>(g.actions[i][s].size()));
    }
    for (int i = 0; i < n; ++i)
      if (!g.actions[i][s].empty() && !g.controls(i, s))
        fail("InvalidGame", "player " + g.player_names[i] +
                                " has actions at " + st.name +
                                " but is not listed as its controller");
    st.p.assign(st.joint_count(), {});
    st.r.assign(st.joint_count(), std::vector<double>(n, 0.0));
  }

  auto resolve = [&](const Json& row, const char* what) -> std::pair<int, int> {
    int s = g.state_index(detail::need(row, "state", what).get<std::string>());
    if (s < 0) fail("InvalidGame", std::string(what) + " names unknown state");
    const auto& st = g.states[s];
    const Json& joint = detail::need(row, "joint", what);
    std::vector<int> per(st.controllers.size(), -1);
    for (auto it = joint.begin(); it != joint.end(); ++it) {
      int i = g.player_index(it.key());
      if (i < 0)
        fail("InvalidGame", std::string(what) + " joint names unknown player");
      int k = g.controller_slot(i, s);
      if (k < 0)
        fail("InvalidGame", std::string(what) + " joint lists non-controller " +
                                it.key() + " at " + st.name);
      const auto& names = g.actions[i][s];
      int a = -1;
      for (size_t q = 0; q < names.size(); ++q)
        if (names[q] == it.value().get<std::string>()) a = static_cast<int>(q);
      if (a < 0)
        fail("InvalidGame", std::string(what) + " joint names unknown action");
      per[k] = a;
    }
    for (int v : per)
      if (v < 0)
        fail("InvalidGame",
             std::string(what) + " joint incomplete at " + st.name);
    return {s, g.encode_joint(s, per)};
  };

  const Json& transitions = detail::need(doc, "transitions", "game");
  for (const auto& row : transitions) {
    auto [s, j] = resolve(row, "transition");
    auto& st = g.states[s];
    if (!st.p[j].empty())
      fail("InvalidGame", "duplicate transition row at " + st.name);
    std::vector<double> p(S, 0.0);
    double sum = 0.0;
    const Json& dist = detail::need(row, "dist", "transition");
    for (auto it = dist.begin(); it != dist.end(); ++it) {
      int s2 = g.state_index(it.key());
      if (s2 < 0)
        fail("InvalidGame", "transition dist names unknown state " + it.key());
      p[s2] += it.value().get<double>();
      sum += it.value().get<double>();
    }
    double dev = std::abs(sum - 1.0);
    if (dev > 1e-12 && dev <= 1e-9 && sum > 0.0)
      for (double& x : p) x /= sum;
    st.p[j] = std::move(p);
  }
  for (int s = 0; s < S; ++s)
    for (int j = 0; j < g.states[s].joint_count(); ++j)
      if (g.states[s].p[j].empty())
        fail("InvalidGame",
             "missing transition row at " + g.states[s].name);

  if (doc.contains("rewards")) {
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& row : doc["rewards"]) {
      auto [s, j] = resolve(row, "reward");
      int i = g.player_index(detail::need(row, "player", "reward")
                                 .get<std::string>());
      if (i < 0) fail("InvalidGame", "reward names unknown player");
      if (!seen.emplace(i, s, j).second)
        fail("InvalidGame", "duplicate reward row at " + g.states[s].name);
      g.states[s].r[j][i] = detail::need(row, "r", "reward").get<double>();
    }
  }

  const Json& discount = detail::need(doc, "discount", "game");
  std::string mode = detail::need(discount, "mode", "discount")
                         .get<std::string>();
  if (mode == "discounted") {
    g.discount.mode = DiscountMode::kDiscounted;
    g.discount.gamma = detail::need(discount, "gamma", "discount")
                           .get<double>();
  } else if (mode == "absorbing") {
    g.discount.mode = DiscountMode::kAbsorbing;
    std::string s0 = detail::need(discount, "absorbing_state", "discount")
                         .get<std::string>();
    g.discount.absorbing_state = g.state_index(s0);
    if (g.discount.absorbing_state < 0)
      fail("InvalidGame", "unknown absorbing state " + s0);
  } else if (mode == "average") {
    g.discount.mode = DiscountMode::kAverage;
  } else {
    fail("InvalidGame", "unknown discount mode " + mode);
  }
  return g;
}

inline bool games_identical(const GameSpec& a, const GameSpec& b) {
  if (a.player_names != b.player_names) return false;
  if (a.actions != b.actions) return false;
  if (a.discount.mode != b.discount.mode ||
      a.discount.gamma != b.discount.gamma ||
      a.discount.absorbing_state != b.discount.absorbing_state)
    return false;
  if (a.states.size() != b.states.size()) return false;
  for (size_t s = 0; s < a.states.size(); ++s) {
    const auto& x = a.states[s];
    const auto& y = b.states[s];
    if (x.name != y.name || x.controllers != y.controllers ||
        x.action_counts != y.action_counts || x.p != y.p || x.r != y.r)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Strategies

inline Json strategy_to_json(const GameSpec& g, const Strategy& pi) {
  Json rows = Json::array();
  for (int i = 0; i < g.num_players(); ++i)
    for (int s = 0; s < g.num_states(); ++s) {
      int m = g.action_count(i, s);
      if (m == 0) continue;
      Json dist = Json::object();
      for (int a = 0; a < m; ++a)
        dist[g.actions[i][s][a]] = pi.dist[i][s][a];
      Json row = Json::object();
      row["player"] = g.player_names[i];
      row["state"] = g.states[s].name;
      row["dist"] = std::move(dist);
      rows.push_back(std::move(row));
    }
  Json doc;
  doc["schema_version"] = 1;
  doc["strategy"] = std::move(rows);
  return doc;
}

inline Strategy strategy_rows_from_json(const GameSpec& g, const Json& rows) {
  Strategy pi = make_strategy_shell(g);
  std::set<std::pair<int, int>> seen;
  for (const auto& row : rows) {
    int i = g.player_index(detail::need(row, "player", "strategy")
                               .get<std::string>());
    int s = g.state_index(detail::need(row, "state", "strategy")
                              .get<std::string>());
    if (i < 0 || s < 0)
      fail("DimensionMismatch", "strategy row names unknown player or state");
    int m = g.action_count(i, s);
    if (m == 0)
      fail("DimensionMismatch", "strategy row for non-controller " +
                                    g.player_names[i] + " at " +
                                    g.states[s].name);
    if (!seen.emplace(i, s).second)
      fail("DimensionMismatch", "duplicate strategy row");
    const Json& dist = detail::need(row, "dist", "strategy");
    double sum = 0.0;
    for (auto it = dist.begin(); it != dist.end(); ++it) {
      int a = -1;
      for (int q = 0; q < m; ++q)
        if (g.actions[i][s][q] == it.key()) a = q;
      if (a < 0)
        fail("DimensionMismatch", "strategy row names unknown action " +
                                      it.key());
      pi.dist[i][s][a] = it.value().get<double>();
      sum += it.value().get<double>();
    }
    double dev = std::abs(sum - 1.0);
    if (dev > 1e-12 && dev <= 1e-9 && sum > 0.0)
      for (double& x : pi.dist[i][s]) x /= sum;
  }
  if (seen.size() != g.control_pairs().size())
    fail("DimensionMismatch", "strategy is missing rows");
  return pi;
}

inline Strategy strategy_from_json(const GameSpec& g, const Json& doc) {
  return strategy_rows_from_json(g, detail::need(doc, "strategy", "strategy"));
}

inline Json nonstationary_to_json(const GameSpec& g,
                                  const NonStationaryStrategy& bar) {
  Json steps = Json::array();
  for (const auto& step : bar.steps)
    steps.push_back(strategy_to_json(g, step)["strategy"]);
  Json doc;
  doc["schema_version"] = 1;
  doc["steps"] = std::move(steps);
  return doc;
}

inline NonStationaryStrategy nonstationary_from_json(const GameSpec& g,
                                                     const Json& doc) {
  NonStationaryStrategy bar;
  for (const auto& step : detail::need(doc, "steps", "nonstationary"))
    bar.steps.push_back(strategy_rows_from_json(g, step));
  return bar;
}

// ---------------------------------------------------------------------------
// Reports

inline Json value_profile_to_json(const GameSpec& g, const ValueProfile& vp) {
  Json values = Json::array();
  for (int i = 0; i < g.num_players(); ++i)
    for (int s = 0; s < g.num_states(); ++s) {
      Json row = Json::object();
      row["player"] = g.player_names[i];
      row["state"] = g.states[s].name;
      row["value"] = vp.V[i][s];
      values.push_back(std::move(row));
    }
  Json doc = Json::object();
  doc["values"] = std::move(values);
  Json u = Json::object();
  for (int i = 0; i < g.num_players(); ++i) u[g.player_names[i]] = vp.u[i];
  doc["u"] = std::move(u);
  if (!vp.upsilon.empty()) {
    Json ups = Json::object();
    for (int i = 0; i < g.num_players(); ++i)
      ups[g.player_names[i]] = vp.upsilon[i];
    doc["upsilon"] = std::move(ups);
  }
  Json q = Json::object();
  for (int s = 0; s < g.num_states(); ++s)
    if (vp.q[s] != 0.0) q[g.states[s].name] = vp.q[s];
  doc["q"] = std::move(q);
  doc["residual"] = vp.residual;
  return doc;
}

inline Json certificate_to_json(const GameSpec& g, const NeCertificate& c) {
  Json doc = Json::object();
  doc["mode"] = certify_mode_name(c.mode);
  doc["epsilon"] = c.epsilon;
  doc["max_gap"] = c.max_gap;
  Json gaps = Json::object();
  for (int i = 0; i < g.num_players(); ++i)
    gaps[g.player_names[i]] = c.player_gaps[i];
  doc["player_gaps"] = std::move(gaps);
  doc["pass"] = c.pass;
  if (c.has_witness) {
    Json w = Json::object();
    w["player"] = g.player_names[c.witness_player];
    w["state"] = g.states[c.witness_state].name;
    if (c.witness_action >= 0 &&
        g.action_count(c.witness_player, c.witness_state) > c.witness_action)
      w["action"] =
          g.actions[c.witness_player][c.witness_state][c.witness_action];
    doc["witness"] = std::move(w);
  }
  return doc;
}

inline Json validation_to_json(const ValidationReport& rep) {
  Json issues = Json::array();
  for (const auto& it : rep.issues) {
    Json row = Json::object();
    row["severity"] =
        it.severity == IssueSeverity::kStructural ? "structural" : "range";
    row["message"] = it.message;
    issues.push_back(std::move(row));
  }
  Json doc = Json::object();
  doc["valid"] = rep.ok();
  doc["issues"] = std::move(issues);
  return doc;
}

// ---------------------------------------------------------------------------
// Circuits and graphs (schemas owned by the reduction layer)

enum class GateKind { kEq, kConst, kMul, kSum, kSub, kGt, kAnd, kOr, kNot };

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::kEq: return "eq";
    case GateKind::kConst: return "const";
    case GateKind::kMul: return "mul";
    case GateKind::kSum: return "sum";
    case GateKind::kSub: return "sub";
    case GateKind::kGt: return "gt";
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kNot: return "not";
  }
  return "?";
}

struct Gate {
  GateKind kind;
  double alpha = 0.0;              // Const, Mul
  std::vector<std::string> in;     // input node names
  std::string out;                 // output node name
};

struct CircuitSpec {
  std::vector<std::string> nodes;
  std::vector<Gate> gates;
};

inline CircuitSpec circuit_from_json(const Json& doc) {
  CircuitSpec c;
  for (const auto& v : detail::need(doc, "nodes", "circuit"))
    c.nodes.push_back(v.get<std::string>());
  for (const auto& grow : detail::need(doc, "gates", "circuit")) {
    Gate gate;
    std::string kind = detail::need(grow, "kind", "gate").get<std::string>();
    if (kind == "eq") gate.kind = GateKind::kEq;
    else if (kind == "const") gate.kind = GateKind::kConst;
    else if (kind == "mul") gate.kind = GateKind::kMul;
    else if (kind == "sum") gate.kind = GateKind::kSum;
    else if (kind == "sub") gate.kind = GateKind::kSub;
    else if (kind == "gt") gate.kind = GateKind::kGt;
    else if (kind == "and") gate.kind = GateKind::kAnd;
    else if (kind == "or") gate.kind = GateKind::kOr;
    else if (kind == "not") gate.kind = GateKind::kNot;
    else fail("InvalidCircuit", "unknown gate kind " + kind);
    if (grow.contains("alpha")) gate.alpha = grow["alpha"].get<double>();
    if (grow.contains("in"))
      for (const auto& v : grow["in"]) gate.in.push_back(v.get<std::string>());
    gate.out = detail::need(grow, "out", "gate").get<std::string>();
    c.gates.push_back(std::move(gate));
  }
  return c;
}

inline Json circuit_to_json(const CircuitSpec& c) {
  Json doc;
  doc["nodes"] = c.nodes;
  Json gates = Json::array();
  for (const auto& gate : c.gates) {
    Json row = Json::object();
    row["kind"] = gate_kind_name(gate.kind);
    if (gate.kind == GateKind::kConst || gate.kind == GateKind::kMul)
      row["alpha"] = gate.alpha;
    row["in"] = gate.in;
    row["out"] = gate.out;
    gates.push_back(std::move(row));
  }
  doc["gates"] = std::move(gates);
  return doc;
}

struct DirectedGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

inline DirectedGraph graph_from_json(const Json& doc) {
  DirectedGraph g;
  for (const auto& v : detail::need(doc, "vertices", "graph"))
    g.vertices.push_back(v.get<std::string>());
  for (const auto& e : detail::need(doc, "edges", "graph")) {
    if (!e.is_array() || e.size() != 2)
      fail("InvalidGame", "graph edge must be a [src, dst] pair");
    g.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return g;
}

inline Json graph_to_json(const DirectedGraph& g) {
  Json doc;
  doc["vertices"] = g.vertices;
  Json edges = Json::array();
  for (const auto& [src, dst] : g.edges)
    edges.push_back(Json::array({src, dst}));
  doc["edges"] = std::move(edges);
  return doc;
}

}  // namespace sg

#endif  // SG_JSON_IO_HPP_
