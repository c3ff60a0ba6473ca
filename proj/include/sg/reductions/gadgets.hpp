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

#ifndef SG_REDUCTIONS_GADGETS_HPP_
#define SG_REDUCTIONS_GADGETS_HPP_

// Arithmetic-circuit gadgets.  Every circuit node becomes a player whose
// first-action probability p_v carries the node's value; per gate, an
// auxiliary player reads the inputs and a reward scheme makes any
// eps-misreporting output a deviation gap above delta.  Chain lengths L
// and the gap thresholds delta, delta_cmp are tied to (gamma, eps) by
// gamma^L <= eps^2.  Logic gates are lowered to arithmetic first:
// not(x) = sub(const(1), x), or = sum, and(x, y) = gt(const(0.75),
// sum(mul(1/2, x), mul(1/2, y))), valid for eps <= 1/12.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sg/game.hpp"
#include "sg/json_io.hpp"
#include "sg/reductions/assembly.hpp"

namespace sg {

struct GadgetParams {
  double gamma = 0.0;
  double eps = 0.0;
  int L = 0;
  double delta = 0.0;      // arithmetic gates: misreport forces gap > delta
  double delta_cmp = 0.0;  // comparison gates
};

inline GadgetParams make_gadget_params(double gamma, double eps) {
  if (!(gamma > 0.0 && gamma < 1.0))
    fail("InvalidCircuit", "gadget discount must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0))
    fail("InvalidCircuit", "gadget accuracy must lie in (0, 1)");
  GadgetParams p;
  p.gamma = gamma;
  p.eps = eps;
  p.L = static_cast<int>(std::ceil(4.0 / (1.0 - gamma) * std::log(1.0 / eps)));
  if (p.L < 1) p.L = 1;
  // log(gamma) <= -(1-gamma) gives gamma^L <= eps^4, so this cannot fire
  // for valid inputs; it guards the arithmetic below.
  if (std::pow(gamma, p.L) > eps * eps + 1e-15)
    fail("InvalidCircuit", "chain length does not dominate eps^2");
  p.delta = (1.0 - gamma) * std::pow(gamma, p.L + 1) * eps / 8.0;
  p.delta_cmp = (1.0 - gamma) * std::pow(gamma, p.L) * eps * eps / 2.0;
  return p;
}

inline bool gate_is_logic(GateKind k) {
  return k == GateKind::kAnd || k == GateKind::kOr || k == GateKind::kNot;
}

inline int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::kConst: return 0;
    case GateKind::kEq:
    case GateKind::kMul:
    case GateKind::kNot: return 1;
    default: return 2;
  }
}

inline void validate_circuit(const CircuitSpec& c) {
  std::set<std::string> nodes;
  for (const auto& v : c.nodes) {
    if (v.empty()) fail("InvalidCircuit", "empty node name");
    if (!nodes.insert(v).second)
      fail("InvalidCircuit", "duplicate node '" + v + "'");
  }
  std::set<std::string> outs;
  for (const auto& gt : c.gates) {
    if (static_cast<int>(gt.in.size()) != gate_arity(gt.kind))
      fail("InvalidCircuit", "gate '" + gt.out + "' has wrong arity");
    if (!nodes.count(gt.out))
      fail("InvalidCircuit", "unknown output node '" + gt.out + "'");
    for (const auto& v : gt.in)
      if (!nodes.count(v)) fail("InvalidCircuit", "unknown input node '" + v + "'");
    if (!outs.insert(gt.out).second)
      fail("InvalidCircuit", "node '" + gt.out + "' written by two gates");
    if (gt.kind == GateKind::kConst && !(gt.alpha >= 0.0 && gt.alpha <= 1.0))
      fail("InvalidCircuit", "const value must lie in [0, 1]");
    if (gt.kind == GateKind::kMul && !(gt.alpha > 0.0 && gt.alpha <= 2.0))
      fail("InvalidCircuit", "mul factor must lie in (0, 2]");
  }
}

// Rewrites and/or/not into eq/const/mul/sum/sub/gt over fresh nodes.
inline CircuitSpec lower_circuit(const CircuitSpec& c, double eps) {
  validate_circuit(c);
  bool logic = false;
  for (const auto& gt : c.gates) logic = logic || gate_is_logic(gt.kind);
  if (logic && eps > 1.0 / 12.0 + 1e-15)
    fail("InvalidCircuit", "logic gates require eps <= 1/12");

  CircuitSpec low;
  low.nodes = c.nodes;
  std::set<std::string> used(c.nodes.begin(), c.nodes.end());
  int counter = 0;
  auto fresh = [&] {
    std::string v;
    do {
      v = "__t" + std::to_string(counter++);
    } while (used.count(v));
    used.insert(v);
    low.nodes.push_back(v);
    return v;
  };
  auto emit = [&](GateKind k, double alpha, std::vector<std::string> in,
                  std::string out) {
    Gate gt;
    gt.kind = k;
    gt.alpha = alpha;
    gt.in = std::move(in);
    gt.out = std::move(out);
    low.gates.push_back(std::move(gt));
  };
  for (const auto& gt : c.gates) {
    switch (gt.kind) {
      case GateKind::kNot: {
        std::string one = fresh();
        emit(GateKind::kConst, 1.0, {}, one);
        emit(GateKind::kSub, 0.0, {one, gt.in[0]}, gt.out);
        break;
      }
      case GateKind::kOr:
        emit(GateKind::kSum, 0.0, {gt.in[0], gt.in[1]}, gt.out);
        break;
      case GateKind::kAnd: {
        std::string thr = fresh(), h0 = fresh(), h1 = fresh(), hs = fresh();
        emit(GateKind::kConst, 0.75, {}, thr);
        emit(GateKind::kMul, 0.5, {gt.in[0]}, h0);
        emit(GateKind::kMul, 0.5, {gt.in[1]}, h1);
        emit(GateKind::kSum, 0.0, {h0, h1}, hs);
        emit(GateKind::kGt, 0.0, {thr, hs}, gt.out);
        break;
      }
      default:
        low.gates.push_back(gt);
    }
  }
  return low;
}

struct NodeBinding {
  int player = -1;
  int state = -1;
};

struct GadgetBuild {
  GameSpec game;
  GadgetParams params;
  CircuitSpec circuit;  // as given (constraint checks refer to this)
  CircuitSpec lowered;  // arithmetic-only form actually built
  // Bindings in lowered.nodes order; p_v is the bound player's first
  // action probability at the bound state.
  std::vector<std::pair<std::string, NodeBinding>> node_map;
  std::vector<NodeBinding> aux_map;  // per lowered gate; unset for gt

  NodeBinding binding(const std::string& node) const {
    for (const auto& [v, b] : node_map)
      if (v == node) return b;
    fail("InvalidCircuit", "unknown node '" + node + "'");
  }
};

// Builds the O-TBSG realizing `c` at accuracy eps.  Node p_v values that
// violate a gate constraint show up as a deviation gap above delta
// (delta_cmp for comparisons) under the own-state utilities.
inline GadgetBuild gcircuit_build(const CircuitSpec& c, double gamma,
                                  double eps) {
  GadgetBuild out;
  out.params = make_gadget_params(gamma, eps);
  out.circuit = c;
  out.lowered = lower_circuit(c, eps);
  int L = out.params.L;
  double gL1 = std::pow(gamma, L + 1);

  detail::TurnBasedAssembly as;
  std::map<std::string, int> node_state;
  for (const auto& v : out.lowered.nodes)
    node_state[v] = as.add(v, {"a1", "a2"});

  // Aux states in gate order; gt has none.
  std::vector<int> aux_state(out.lowered.gates.size(), -1);
  for (size_t k = 0; k < out.lowered.gates.size(); ++k) {
    if (out.lowered.gates[k].kind == GateKind::kGt) continue;
    aux_state[k] = as.add("__aux" + std::to_string(k), {"a1", "a2"});
  }

  std::map<std::string, size_t> producer;
  for (size_t k = 0; k < out.lowered.gates.size(); ++k)
    producer[out.lowered.gates[k].out] = k;

  // Gate wiring: aux dynamics and the reward scheme.
  for (size_t k = 0; k < out.lowered.gates.size(); ++k) {
    const Gate& gt = out.lowered.gates[k];
    int s_out = node_state[gt.out];
    int p_out = as.state_player[s_out];
    if (gt.kind == GateKind::kGt) {
      int s1 = node_state[gt.in[0]], s2 = node_state[gt.in[1]];
      as.pay(p_out, s1, 0, 1.0);
      as.pay(p_out, s2, 0, 1.0);
      continue;  // transitions of s_out are wired below
    }
    int x = aux_state[k];
    int p_aux = as.state_player[x];
    // Aux dynamics: a1 inspects the input(s), a2 hands off to the output.
    switch (gt.kind) {
      case GateKind::kConst:
        as.arc(x, 0, x);
        break;
      case GateKind::kSum:
      case GateKind::kSub:
        as.arc(x, 0, node_state[gt.in[0]], 0.5);
        as.arc(x, 0, node_state[gt.in[1]], 0.5);
        break;
      default:  // eq, mul
        as.arc(x, 0, node_state[gt.in[0]]);
    }
    as.arc(x, 1, s_out);
    // Aux rewards.
    switch (gt.kind) {
      case GateKind::kEq:
        as.pay(p_aux, node_state[gt.in[0]], 0, 0.5);
        break;
      case GateKind::kMul:
        as.pay(p_aux, node_state[gt.in[0]], 0, gt.alpha / 2.0);
        break;
      case GateKind::kConst:
        as.pay(p_aux, x, 0, gamma * (1.0 - gamma) * gt.alpha / 2.0);
        break;
      case GateKind::kSum:
        as.pay(p_aux, node_state[gt.in[0]], 0, 1.0);
        as.pay(p_aux, node_state[gt.in[1]], 0, 1.0);
        break;
      case GateKind::kSub:
        as.pay(p_aux, node_state[gt.in[0]], 0, 1.0);
        as.pay(p_aux, node_state[gt.in[1]], 0, -1.0);
        break;
      default:
        break;
    }
    as.pay(p_aux, x, 1, -gamma / 2.0);
    as.pay(p_aux, s_out, 0, 1.0);
    as.pay(p_aux, s_out, 1, 0.5);
    // Output-player rewards.
    if (gt.kind == GateKind::kConst) {
      as.pay(p_out, x, 0, -gamma / 4.0);
    } else {
      for (const auto& v : gt.in) as.pay(p_out, node_state[v], 0, -0.25);
      for (const auto& v : gt.in) as.pay(p_out, node_state[v], 1, -0.25);
    }
    as.pay(p_out, x, 1, 3.0 * gamma / 4.0);
    as.pay(p_out, s_out, 0, gL1 / 4.0);
  }

  // Node dynamics: the producing gate owns the outgoing structure; free
  // inputs return to themselves either way.
  for (const auto& v : out.lowered.nodes) {
    int s = node_state[v];
    auto it = producer.find(v);
    if (it == producer.end()) {
      as.chain(s, 0, s, L);
      as.chain(s, 1, s, L);
    } else if (out.lowered.gates[it->second].kind == GateKind::kGt) {
      const Gate& gt = out.lowered.gates[it->second];
      as.chain(s, 0, node_state[gt.in[0]], L);
      as.chain(s, 1, node_state[gt.in[1]], L);
    } else {
      as.chain(s, 0, s, L);
      as.chain(s, 1, aux_state[it->second], L);
    }
  }

  out.game = as.materialize(gamma);
  for (const auto& v : out.lowered.nodes)
    out.node_map.push_back(
        {v, NodeBinding{as.state_player[node_state[v]], node_state[v]}});
  out.aux_map.resize(out.lowered.gates.size());
  for (size_t k = 0; k < out.lowered.gates.size(); ++k)
    if (aux_state[k] >= 0)
      out.aux_map[k] =
          NodeBinding{as.state_player[aux_state[k]], aux_state[k]};
  return out;
}

inline double med3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

struct GateCheck {
  std::string out;
  GateKind kind = GateKind::kEq;
  double value = 0.0;
  bool constrained = true;
  double lo = 0.0, hi = 1.0;
  bool pass = true;
};

struct AssignmentReport {
  std::vector<std::pair<std::string, double>> values;  // lowered node order
  std::vector<GateCheck> checks;                       // original gate order
  bool all_pass = true;
};

// Reads p_v off a strategy and checks every original gate's constraint
// interval at accuracy eps.
inline AssignmentReport circuit_assignment(const GadgetBuild& build,
                                           const Strategy& pi) {
  check_strategy(build.game, pi);
  double eps = build.params.eps;
  std::map<std::string, double> p;
  AssignmentReport rep;
  for (const auto& [v, b] : build.node_map) {
    p[v] = pi.dist[b.player][b.state][0];
    rep.values.push_back({v, p[v]});
  }
  for (const Gate& gt : build.circuit.gates) {
    GateCheck ck;
    ck.out = gt.out;
    ck.kind = gt.kind;
    ck.value = p[gt.out];
    double p1 = gt.in.size() > 0 ? p[gt.in[0]] : 0.0;
    double p2 = gt.in.size() > 1 ? p[gt.in[1]] : 0.0;
    switch (gt.kind) {
      case GateKind::kEq:
        ck.lo = p1 - eps;
        ck.hi = p1 + eps;
        break;
      case GateKind::kConst:
        ck.lo = med3(0.0, gt.alpha - eps, 1.0 - eps);
        ck.hi = med3(1.0, gt.alpha + eps, eps);
        break;
      case GateKind::kMul:
        ck.lo = med3(0.0, gt.alpha * (p1 - eps), 1.0 - eps);
        ck.hi = med3(1.0, gt.alpha * (p1 + eps), eps);
        break;
      case GateKind::kSum:
        ck.lo = med3(0.0, p1 + p2 - eps, 1.0 - eps);
        ck.hi = std::min(1.0, p1 + p2 + eps);
        break;
      case GateKind::kSub:
        ck.lo = std::max(0.0, p1 - p2 - eps);
        ck.hi = med3(1.0, p1 - p2 + eps, eps);
        break;
      case GateKind::kGt:
        if (p1 >= p2 + eps) {
          ck.lo = 1.0 - eps;
          ck.hi = 1.0;
        } else if (p1 <= p2 - eps) {
          ck.lo = 0.0;
          ck.hi = eps;
        } else {
          ck.constrained = false;
        }
        break;
      case GateKind::kAnd:
        if (p1 >= 1.0 - eps && p2 >= 1.0 - eps) {
          ck.lo = 1.0 - eps;
          ck.hi = 1.0;
        } else if (p1 <= eps || p2 <= eps) {
          ck.lo = 0.0;
          ck.hi = eps;
        } else {
          ck.constrained = false;
        }
        break;
      case GateKind::kOr:
        if (p1 >= 1.0 - eps || p2 >= 1.0 - eps) {
          ck.lo = 1.0 - eps;
          ck.hi = 1.0;
        } else if (p1 <= eps && p2 <= eps) {
          ck.lo = 0.0;
          ck.hi = eps;
        } else {
          ck.constrained = false;
        }
        break;
      case GateKind::kNot:
        if (p1 >= 1.0 - eps) {
          ck.lo = 0.0;
          ck.hi = eps;
        } else if (p1 <= eps) {
          ck.lo = 1.0 - eps;
          ck.hi = 1.0;
        } else {
          ck.constrained = false;
        }
        break;
    }
    ck.pass = !ck.constrained ||
              (ck.value >= ck.lo - 1e-12 && ck.value <= ck.hi + 1e-12);
    rep.all_pass = rep.all_pass && ck.pass;
    rep.checks.push_back(std::move(ck));
  }
  return rep;
}

}  // namespace sg

#endif  // SG_REDUCTIONS_GADGETS_HPP_
