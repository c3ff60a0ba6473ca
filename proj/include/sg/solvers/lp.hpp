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

#ifndef SG_SOLVERS_LP_HPP_
#define SG_SOLVERS_LP_HPP_

// Linear feasibility.  A small dense phase-1 simplex with Bland's rule
// backs two solvers: the fixed-value policy program (turn-based games have
// policy-linear Bellman rows once values are pinned) and the brute-force
// scan of a value net, which tries candidate value vectors in lexicographic
// order and keeps the first one whose policy program is feasible.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/solvers/result.hpp"

namespace sg {

struct LpRow {
  std::vector<double> a;  // dense over variables
  double b = 0.0;
};

struct LpProblem {
  int num_vars = 0;
  std::vector<LpRow> leq;    // a.x <= b
  std::vector<LpRow> eq;     // a.x == b
  std::vector<double> lo;    // per-variable bounds; +-inf allowed
  std::vector<double> hi;
};

struct LpOutcome {
  bool feasible = false;
  std::vector<double> x;
  double phase1 = 0.0;  // optimal artificial mass
};

// Feasibility by phase-1 simplex.  Declares feasible when the optimal
// artificial mass is <= 1e-9 (every row then holds within 1e-9), and
// infeasible only above that threshold.  Bland's rule prevents cycling.
inline LpOutcome lp_feasibility(const LpProblem& prob) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kPivTol = 1e-12;
  int nx = prob.num_vars;
  for (const auto& row : prob.leq)
    if (static_cast<int>(row.a.size()) != nx)
      fail("InternalError", "LP row dimension mismatch");
  for (const auto& row : prob.eq)
    if (static_cast<int>(row.a.size()) != nx)
      fail("InternalError", "LP row dimension mismatch");

  // Shift variables to y >= 0.  col_of[j] is the y-column of x_j, sign_of
  // its orientation; free variables get a second (negative) column.
  std::vector<int> col_of(nx), neg_col(nx, -1);
  std::vector<double> shift(nx, 0.0);
  std::vector<int> sign_of(nx, 1);
  int ny = 0;
  std::vector<LpRow> extra_leq;
  for (int j = 0; j < nx; ++j) {
    double lo = prob.lo.empty() ? -kInf : prob.lo[j];
    double hi = prob.hi.empty() ? kInf : prob.hi[j];
    if (lo > -kInf) {
      col_of[j] = ny++;
      shift[j] = lo;
      sign_of[j] = 1;
      if (hi < kInf) {
        LpRow r;
        r.a.assign(nx, 0.0);
        r.a[j] = 1.0;
        r.b = hi;
        extra_leq.push_back(std::move(r));
      }
    } else if (hi < kInf) {
      col_of[j] = ny++;
      shift[j] = hi;
      sign_of[j] = -1;  // x = hi - y
    } else {
      col_of[j] = ny++;
      neg_col[j] = ny++;
      sign_of[j] = 1;
    }
  }

  // Assemble equalities in y with RHS >= 0; slack columns for leq rows.
  struct StdRow {
    std::vector<double> a;  // over y columns (resized later for slacks)
    double b;
    int slack_sign;  // 0 none, +1 for <=, -1 for surplus
  };
  std::vector<StdRow> rows;
  auto add_row = [&](const LpRow& src, bool is_eq) {
    StdRow r;
    r.a.assign(ny, 0.0);
    double b = src.b;
    for (int j = 0; j < nx; ++j) {
      double c = src.a[j];
      if (c == 0.0) continue;
      b -= c * shift[j];
      r.a[col_of[j]] += c * sign_of[j];
      if (neg_col[j] >= 0) r.a[neg_col[j]] -= c;
    }
    r.b = b;
    r.slack_sign = is_eq ? 0 : 1;
    rows.push_back(std::move(r));
  };
  for (const auto& r : prob.leq) add_row(r, false);
  for (const auto& r : extra_leq) add_row(r, false);
  for (const auto& r : prob.eq) add_row(r, true);

  int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (auto& r : rows)
    if (r.slack_sign != 0) ++nslack;
  // Flip rows to nonnegative RHS; a flipped <= row turns its slack into a
  // surplus and needs an artificial, as does every equality.
  int width = ny + nslack;
  std::vector<int> art_of(m, -1);
  int nart = 0;
  {
    int sk = 0;
    for (auto& r : rows) {
      bool flip = r.b < 0.0;
      if (flip) {
        for (double& c : r.a) c = -c;
        r.b = -r.b;
      }
      if (r.slack_sign != 0) {
        r.slack_sign = flip ? -1 : 1;
        ++sk;
      }
    }
    for (int i = 0; i < m; ++i)
      if (rows[i].slack_sign <= 0) art_of[i] = nart++;
  }
  int total = width + nart;

  // Dense tableau T: m rows plus objective row (min sum of artificials).
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m, -1);
  {
    int sk = 0;
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c < ny; ++c) T[i][c] = rows[i].a[c];
      if (rows[i].slack_sign != 0) {
        T[i][ny + sk] = rows[i].slack_sign;
        if (rows[i].slack_sign > 0) basis[i] = ny + sk;
        ++sk;
      }
      if (art_of[i] >= 0) {
        T[i][width + art_of[i]] = 1.0;
        basis[i] = width + art_of[i];
      }
      T[i][total] = rows[i].b;
    }
    // Objective row: reduced costs of min sum(artificials) with the
    // artificial basis priced out.
    for (int k = 0; k < nart; ++k) T[m][width + k] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (art_of[i] < 0) continue;
      for (int c = 0; c <= total; ++c) T[m][c] -= T[i][c];
    }
  }

  const int kMaxPivots = 20000;
  for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
    // Bland: entering = lowest column with negative reduced cost.
    int enter = -1;
    for (int c = 0; c < total; ++c)
      if (T[m][c] < -kPivTol) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= kPivTol) continue;
      double ratio = T[i][total] / T[i][enter];
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (leave < 0 || basis[i] < basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0)
      fail("InternalError", "phase-1 simplex reports an unbounded direction");
    double piv = T[leave][enter];
    for (int c = 0; c <= total; ++c) T[leave][c] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = T[i][enter];
      if (f == 0.0) continue;
      for (int c = 0; c <= total; ++c) T[i][c] -= f * T[leave][c];
    }
    basis[leave] = enter;
  }

  LpOutcome out;
  out.phase1 = -T[m][total];  // objective row stores -z
  if (out.phase1 > 1e-9) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;
  std::vector<double> y(width, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] >= 0 && basis[i] < width) y[basis[i]] = T[i][total];
  out.x.assign(nx, 0.0);
  for (int j = 0; j < nx; ++j) {
    double v = y[col_of[j]];
    if (neg_col[j] >= 0) v -= y[neg_col[j]];
    out.x[j] = shift[j] + sign_of[j] * v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-value policy program (turn-based)

namespace detail {

// Per-state variable layout of a TBSG policy vector: var_base[s] is the
// first variable of state s's distribution.
inline std::vector<int> policy_var_base(const GameSpec& g) {
  std::vector<int> base(g.num_states() + 1, 0);
  for (int s = 0; s < g.num_states(); ++s) {
    int c = g.controller_of(s);
    if (c < 0) fail("NotTurnBased", "state " + g.states[s].name +
                                        " has several controllers");
    base[s + 1] = base[s] + g.action_count(c, s);
  }
  return base;
}

// Q_i(s, a) = r_{i,s,a} + gamma p_{s,a} . V_i for a candidate value table.
inline double q_value(const GameSpec& g, const std::vector<std::vector<double>>& V,
                      int i, int s, int a) {
  const auto& st = g.states[s];
  double q = st.r[a][i];
  double gamma = g.discount.gamma;
  for (int s2 = 0; s2 < g.num_states(); ++s2)
    q += gamma * st.p[a][s2] * V[i][s2];
  return q;
}

// The value-only constraint family: the controller of s must find no
// action whose backup beats V by more than eps2 (to tolerance 1e-9, the
// same slack lp_feasibility guarantees on its rows).
inline bool values_self_consistent(const GameSpec& g,
                                   const std::vector<std::vector<double>>& V,
                                   double eps2) {
  for (int s = 0; s < g.num_states(); ++s) {
    int c = g.controller_of(s);
    for (int a = 0; a < g.action_count(c, s); ++a)
      if (V[c][s] < q_value(g, V, c, s, a) - eps2 - 1e-9) return false;
  }
  return true;
}

}  // namespace detail

struct LpPolicyOutcome {
  bool feasible = false;
  Strategy strategy;
};

// Feasibility program over policies for a pinned value table V (player
// major, [player][state]).  Rows: (a) no action improves on V by more than
// eps2 at the controller's own states (constant rows, prescreened); (b,c)
// every player's on-policy backup matches V within eps2 at every state;
// (d,e) each state's policy row is a distribution.
inline LpPolicyOutcome lp_policies_for_values(
    const GameSpec& g, const std::vector<std::vector<double>>& V,
    double eps2) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "lp_policies_for_values requires discounted mode");
  std::vector<int> base = detail::policy_var_base(g);
  LpPolicyOutcome out;
  if (!detail::values_self_consistent(g, V, eps2)) return out;

  int S = g.num_states(), n = g.num_players();
  LpProblem prob;
  prob.num_vars = base[S];
  prob.lo.assign(prob.num_vars, 0.0);
  prob.hi.assign(prob.num_vars, std::numeric_limits<double>::infinity());
  for (int s = 0; s < S; ++s) {
    LpRow sum1;
    sum1.a.assign(prob.num_vars, 0.0);
    for (int v = base[s]; v < base[s + 1]; ++v) sum1.a[v] = 1.0;
    sum1.b = 1.0;
    prob.eq.push_back(std::move(sum1));
  }
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < S; ++s) {
      LpRow up;  // sum_a pi(s,a) Q_i(s,a) <= V_i(s) + eps2
      up.a.assign(prob.num_vars, 0.0);
      int c = g.controller_of(s);
      for (int a = 0; a < g.action_count(c, s); ++a)
        up.a[base[s] + a] = detail::q_value(g, V, i, s, a);
      up.b = V[i][s] + eps2;
      LpRow down = up;  // and >= V_i(s) - eps2
      for (double& x : down.a) x = -x;
      down.b = -(V[i][s] - eps2);
      prob.leq.push_back(std::move(up));
      prob.leq.push_back(std::move(down));
    }

  LpOutcome lp = lp_feasibility(prob);
  if (!lp.feasible) return out;
  out.feasible = true;
  out.strategy = make_strategy_shell(g);
  for (int s = 0; s < S; ++s) {
    int c = g.controller_of(s);
    int m = g.action_count(c, s);
    double total = 0.0;
    for (int a = 0; a < m; ++a) {
      double v = std::max(lp.x[base[s] + a], 0.0);
      out.strategy.dist[c][s][a] = v;
      total += v;
    }
    // The simplex satisfies sum = 1 only to 1e-9; renormalize exactly.
    for (int a = 0; a < m; ++a) out.strategy.dist[c][s][a] /= total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Value-net brute force

struct ValueNet {
  double eps_prime = 0.0;   // grid step eps(1-gamma)^2/(1+gamma)
  double eps2 = 0.0;        // LP slack eps(1-gamma)^2
  double cap = 0.0;         // ceil(1/(1-gamma))
  int levels_per_dim = 0;   // K+1
  int dims = 0;             // n * |S|
  std::vector<double> levels;

  double size() const { return std::pow(levels_per_dim, dims); }
};

inline ValueNet make_value_net(const GameSpec& g, double eps) {
  double gamma = g.discount.gamma;
  ValueNet net;
  net.eps_prime = eps * (1.0 - gamma) * (1.0 - gamma) / (1.0 + gamma);
  net.eps2 = net.eps_prime * (1.0 + gamma);
  net.cap = std::ceil(1.0 / (1.0 - gamma));
  int K = static_cast<int>(std::ceil(net.cap / net.eps_prime - 1e-12));
  net.levels_per_dim = K + 1;
  net.levels.resize(net.levels_per_dim);
  for (int k = 0; k <= K; ++k)
    net.levels[k] = std::min(k * net.eps_prime, net.cap);
  net.dims = g.num_players() * g.num_states();
  return net;
}

// Scans the net in lexicographic order (player-major dimension order, the
// first coordinate most significant, levels ascending) and returns the
// first candidate whose policy program is feasible.  The certificate is
// recomputed with deviation_gap at the requested eps.
inline SolveResult brute_force_value_net(const GameSpec& g, double eps,
                                         double budget = 1e7) {
  GameClass cls = classify_game(g);
  if (!cls.is_tbsg)
    fail("NotTurnBased", "the value-net program needs one controller per state");
  ValueNet net = make_value_net(g, eps);
  if (net.size() > budget)
    fail("BudgetExceeded",
         "value net needs " + std::to_string(net.size()) +
             " candidates, budget " + std::to_string(budget));

  int n = g.num_players(), S = g.num_states();
  SolveResult res;
  res.method = "lp-net";
  std::vector<int> cursor(net.dims, 0);
  std::vector<std::vector<double>> V(n, std::vector<double>(S, 0.0));
  long long examined = 0;
  for (;;) {
    ++examined;
    for (int d = 0; d < net.dims; ++d)
      V[d / S][d % S] = net.levels[cursor[d]];
    if (detail::values_self_consistent(g, V, net.eps2)) {
      LpPolicyOutcome lp = lp_policies_for_values(g, V, net.eps2);
      if (lp.feasible) {
        res.strategy = lp.strategy;
        res.iterations = examined;
        res.certificate = deviation_gap(g, res.strategy, {}, eps);
        return res;
      }
    }
    // Odometer: last dimension varies fastest.
    int d = net.dims - 1;
    while (d >= 0 && ++cursor[d] == net.levels_per_dim) cursor[d--] = 0;
    if (d < 0) break;
  }
  fail("Infeasible", "no value-net candidate admits a feasible policy");
}

}  // namespace sg

#endif  // SG_SOLVERS_LP_HPP_
