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

#ifndef SG_EVALUATE_HPP_
#define SG_EVALUATE_HPP_

// Exact strategy evaluation: induced Markov chains, value functions under
// the discounted, absorbing and average-reward criteria, utilities, and
// exact best responses by policy iteration.

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "sg/game.hpp"

namespace sg {

// Markov chain induced by a stationary profile: P is S x S row-stochastic,
// r is S x n with r(s, i) the expected one-step reward of player i.
struct InducedChain {
  Eigen::MatrixXd P;
  Eigen::MatrixXd r;
};

inline InducedChain induced_chain(const GameSpec& g, const Strategy& pi) {
  check_strategy(g, pi);
  int S = g.num_states(), n = g.num_players();
  InducedChain out;
  out.P = Eigen::MatrixXd::Zero(S, S);
  out.r = Eigen::MatrixXd::Zero(S, n);
  for (int s = 0; s < S; ++s) {
    const auto& st = g.states[s];
    int joints = st.joint_count();
    for (int j = 0; j < joints; ++j) {
      auto a = g.decode_joint(s, j);
      double w = 1.0;
      for (size_t k = 0; k < st.controllers.size(); ++k)
        w *= pi.dist[st.controllers[k]][s][a[k]];
      if (w == 0.0) continue;
      for (int s2 = 0; s2 < S; ++s2) out.P(s, s2) += w * st.p[j][s2];
      for (int i = 0; i < n; ++i) out.r(s, i) += w * st.r[j][i];
    }
  }
  return out;
}

// Expected transition row and player-i reward when player i plays `action`
// at state s and every other controller of s follows pi.  action = -1
// marginalizes player i as well (or applies when i does not control s).
inline void one_step_deviation(const GameSpec& g, const Strategy& pi, int s,
                               int player, int action, Eigen::VectorXd* prow,
                               double* reward_i) {
  const auto& st = g.states[s];
  int slot = g.controller_slot(player, s);
  prow->setZero(g.num_states());
  *reward_i = 0.0;
  for (int j = 0; j < st.joint_count(); ++j) {
    auto a = g.decode_joint(s, j);
    if (slot >= 0 && action >= 0 && a[slot] != action) continue;
    double w = 1.0;
    for (size_t k = 0; k < st.controllers.size(); ++k) {
      if (static_cast<int>(k) == slot && action >= 0) continue;
      w *= pi.dist[st.controllers[k]][s][a[k]];
    }
    if (w == 0.0) continue;
    for (int s2 = 0; s2 < g.num_states(); ++s2)
      (*prow)(s2) += w * st.p[j][s2];
    *reward_i += w * st.r[j][player];
  }
}

// ---------------------------------------------------------------------------
// Initial distributions and value profiles

struct InitialDistribution {
  std::vector<double> q;  // distribution over states
};

inline InitialDistribution uniform_q(const GameSpec& g) {
  InitialDistribution d;
  d.q.assign(g.num_states(), 1.0 / g.num_states());
  return d;
}

inline InitialDistribution point_q(const GameSpec& g, int state) {
  InitialDistribution d;
  d.q.assign(g.num_states(), 0.0);
  d.q.at(state) = 1.0;
  return d;
}

struct ValueProfile {
  std::vector<std::vector<double>> V;  // [player][state]
  std::vector<double> u;               // <q, V_i> per player
  std::vector<double> upsilon;         // V_i(s_i); empty unless every player
                                       // controls exactly one state
  std::vector<double> q;               // the recorded initial distribution
  double residual = 0.0;               // max-norm defect of the linear solve
};

namespace detail {

inline void fill_utilities(const GameSpec& g, const InitialDistribution& q,
                           ValueProfile* vp) {
  int n = g.num_players(), S = g.num_states();
  vp->q = q.q;
  vp->u.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < S; ++s) vp->u[i] += q.q[s] * vp->V[i][s];
  bool o_game = true;
  for (int i = 0; i < n; ++i)
    if (g.own_state(i) < 0) o_game = false;
  if (o_game) {
    vp->upsilon.assign(n, 0.0);
    for (int i = 0; i < n; ++i) vp->upsilon[i] = vp->V[i][g.own_state(i)];
  }
}

}  // namespace detail

// V_i = (I - gamma P)^{-1} r_i for every player, one LU shared across
// players.  Residual above 1e-10 signals numerical corruption (the system
// is strictly diagonally dominant for gamma < 1).
inline ValueProfile value_function(const GameSpec& g, const Strategy& pi,
                                   const InitialDistribution& q) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "value_function requires discounted mode");
  int S = g.num_states(), n = g.num_players();
  InducedChain ch = induced_chain(g, pi);
  Eigen::MatrixXd M =
      Eigen::MatrixXd::Identity(S, S) - g.discount.gamma * ch.P;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  Eigen::MatrixXd X = lu.solve(ch.r);
  double residual = (M * X - ch.r).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10))
    fail("SingularSystem",
         "value solve residual " + std::to_string(residual));
  ValueProfile vp;
  vp.residual = residual;
  vp.V.assign(n, std::vector<double>(S, 0.0));
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < S; ++s) vp.V[i][s] = X(s, i);
  detail::fill_utilities(g, q, &vp);
  return vp;
}

inline ValueProfile value_function(const GameSpec& g, const Strategy& pi) {
  return value_function(g, pi, uniform_q(g));
}

// Total reward until absorption: V_T = (I - P_TT)^{-1} r_T on transient
// states, zero at the trap.  The transient block must contract; its
// spectral radius is estimated by a renormalized power iteration.
inline ValueProfile absorbing_value(const GameSpec& g, const Strategy& pi,
                                    const InitialDistribution& q) {
  if (g.discount.mode != DiscountMode::kAbsorbing)
    fail("InvalidGame", "absorbing_value requires absorbing mode");
  int S = g.num_states(), n = g.num_players();
  int s0 = g.discount.absorbing_state;
  if (s0 < 0 || s0 >= S) fail("InvalidGame", "absorbing state missing");
  InducedChain ch = induced_chain(g, pi);

  std::vector<int> trans;  // transient = everything but the trap
  for (int s = 0; s < S; ++s)
    if (s != s0) trans.push_back(s);
  int T = static_cast<int>(trans.size());
  ValueProfile vp;
  vp.V.assign(n, std::vector<double>(S, 0.0));
  if (T > 0) {
    Eigen::MatrixXd Ptt(T, T), rt(T, n);
    for (int a = 0; a < T; ++a) {
      for (int b = 0; b < T; ++b) Ptt(a, b) = ch.P(trans[a], trans[b]);
      for (int i = 0; i < n; ++i) rt(a, i) = ch.r(trans[a], i);
    }
    // Spectral-radius estimate: geometric mean of the renormalized growth
    // factors over a trailing window (robust to periodic blocks).
    {
      Eigen::VectorXd v = Eigen::VectorXd::Ones(T);
      const int kSteps = 3000, kWindow = 500;
      double logsum = 0.0;
      int counted = 0;
      for (int t = 0; t < kSteps; ++t) {
        v = Ptt * v;
        double m = v.cwiseAbs().maxCoeff();
        if (m <= 0.0) {
          logsum = -1e30;
          counted = 1;
          break;
        }
        v /= m;
        if (t >= kSteps - kWindow) {
          logsum += std::log(m);
          ++counted;
        }
      }
      double rho = std::exp(logsum / counted);
      if (rho >= 1.0 - 1e-9)
        fail("NonConvergent",
             "transient block spectral radius estimate " +
                 std::to_string(rho));
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(T, T) - Ptt;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::MatrixXd X = lu.solve(rt);
    double residual = (M * X - rt).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10))
      fail("SingularSystem",
           "absorbing solve residual " + std::to_string(residual));
    vp.residual = residual;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < T; ++a) vp.V[i][trans[a]] = X(a, i);
  }
  detail::fill_utilities(g, q, &vp);
  return vp;
}

inline ValueProfile absorbing_value(const GameSpec& g, const Strategy& pi) {
  return absorbing_value(g, pi, uniform_q(g));
}

namespace detail {

// Stationary row vector of P from a given start, iterating the lazy chain
// (I+P)/2 so periodic chains converge; residual is taken against P itself.
inline Eigen::RowVectorXd stationary_from(const Eigen::MatrixXd& P,
                                          Eigen::RowVectorXd x,
                                          double residual_tol) {
  const int kMaxIters = 200000;
  for (int t = 0; t < kMaxIters; ++t) {
    Eigen::RowVectorXd xP = x * P;
    if ((xP - x).cwiseAbs().sum() <= residual_tol) return x;
    x = 0.5 * (x + xP);
  }
  fail("NotUnichain", "stationary power iteration did not converge");
}

}  // namespace detail

// Stationary distribution of a row-stochastic matrix; distinct starts must
// agree within 1e-8 or the chain is declared multichain.
inline Eigen::RowVectorXd stationary_distribution(const Eigen::MatrixXd& P) {
  int S = static_cast<int>(P.rows());
  Eigen::RowVectorXd uniform = Eigen::RowVectorXd::Constant(S, 1.0 / S);
  Eigen::RowVectorXd lam = detail::stationary_from(P, uniform, 1e-10);
  if (S > 1) {
    Eigen::RowVectorXd e0 = Eigen::RowVectorXd::Zero(S);
    e0(0) = 1.0;
    Eigen::RowVectorXd eL = Eigen::RowVectorXd::Zero(S);
    eL(S - 1) = 1.0;
    for (const auto& start : {e0, eL}) {
      Eigen::RowVectorXd other = detail::stationary_from(P, start, 1e-10);
      if ((other - lam).cwiseAbs().maxCoeff() > 1e-8)
        fail("NotUnichain",
             "stationary distributions from distinct starts disagree");
    }
  }
  return lam;
}

// Average reward lambda . r_i, constant across states for unichain input.
inline ValueProfile average_reward_value(const GameSpec& g,
                                         const Strategy& pi) {
  if (g.discount.mode != DiscountMode::kAverage)
    fail("InvalidGame", "average_reward_value requires average mode");
  int S = g.num_states(), n = g.num_players();
  InducedChain ch = induced_chain(g, pi);
  Eigen::RowVectorXd lam = stationary_distribution(ch.P);
  ValueProfile vp;
  vp.V.assign(n, std::vector<double>(S, 0.0));
  for (int i = 0; i < n; ++i) {
    double gi = lam.dot(ch.r.col(i));
    for (int s = 0; s < S; ++s) vp.V[i][s] = gi;
  }
  vp.residual = (lam * ch.P - lam).cwiseAbs().sum();
  detail::fill_utilities(g, uniform_q(g), &vp);
  return vp;
}

// Dispatch on the game's discount mode.
inline ValueProfile evaluate_strategy(const GameSpec& g, const Strategy& pi,
                                      const InitialDistribution& q) {
  switch (g.discount.mode) {
    case DiscountMode::kDiscounted: return value_function(g, pi, q);
    case DiscountMode::kAbsorbing: return absorbing_value(g, pi, q);
    case DiscountMode::kAverage: return average_reward_value(g, pi);
  }
  fail("InvalidGame", "unknown discount mode");
}

inline ValueProfile evaluate_strategy(const GameSpec& g, const Strategy& pi) {
  return evaluate_strategy(g, pi, uniform_q(g));
}

// ---------------------------------------------------------------------------
// Best response

struct BestResponse {
  std::vector<std::vector<double>> policy;  // pure rows for the player
  ValueProfile values;                      // of (policy, pi_{-i})
};

// Exact best response in the MDP induced by holding the other players at
// pi: Howard policy iteration, simultaneous switches, switch only on
// improvement above 1e-12, argmax ties to the lowest action index.
inline BestResponse best_response(const GameSpec& g, int player,
                                  const Strategy& pi,
                                  const InitialDistribution& q) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "best_response requires discounted mode");
  if (player < 0 || player >= g.num_players())
    fail("PlayerOutOfRange", "no player with index " + std::to_string(player));
  check_strategy(g, pi);
  int S = g.num_states();
  double gamma = g.discount.gamma;

  // Precompute the deviation rows: at controlled states one row per own
  // action, elsewhere a single marginalized row.
  std::vector<std::vector<Eigen::VectorXd>> rows(S);
  std::vector<std::vector<double>> rews(S);
  for (int s = 0; s < S; ++s) {
    int m = g.action_count(player, s);
    int k = std::max(m, 1);
    rows[s].resize(k);
    rews[s].resize(k);
    for (int a = 0; a < k; ++a)
      one_step_deviation(g, pi, s, player, m > 0 ? a : -1, &rows[s][a],
                         &rews[s][a]);
  }

  std::vector<int> choice(S, 0);
  Eigen::VectorXd V = Eigen::VectorXd::Zero(S);
  const int kMaxIters = 10000;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    // Evaluate the current pure policy.
    Eigen::MatrixXd P(S, S);
    Eigen::VectorXd r(S);
    for (int s = 0; s < S; ++s) {
      P.row(s) = rows[s][choice[s]].transpose();
      r(s) = rews[s][choice[s]];
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(S, S) - gamma * P;
    V = M.partialPivLu().solve(r);
    double residual = (M * V - r).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10))
      fail("SingularSystem",
           "policy evaluation residual " + std::to_string(residual));

    bool switched = false;
    for (int s = 0; s < S; ++s) {
      int m = g.action_count(player, s);
      if (m <= 1) continue;
      int best = 0;
      double best_q = rews[s][0] + gamma * rows[s][0].dot(V);
      for (int a = 1; a < m; ++a) {
        double qa = rews[s][a] + gamma * rows[s][a].dot(V);
        if (qa > best_q + 1e-12) {
          best = a;
          best_q = qa;
        }
      }
      if (best != choice[s] && best_q > V(s) + 1e-12) {
        choice[s] = best;
        switched = true;
      }
    }
    if (!switched) break;
  }

  BestResponse out;
  out.policy.assign(S, {});
  for (int s = 0; s < S; ++s) {
    int m = g.action_count(player, s);
    if (m == 0) continue;
    out.policy[s].assign(m, 0.0);
    out.policy[s][choice[s]] = 1.0;
  }
  Strategy full = mix_strategy(g, pi, player, out.policy, 1.0);
  out.values = value_function(g, full, q);
  return out;
}

inline BestResponse best_response(const GameSpec& g, int player,
                                  const Strategy& pi) {
  return best_response(g, player, pi, uniform_q(g));
}

// ---------------------------------------------------------------------------
// Mixing-time diagnostic (fixed strategy only)

// Smallest t with max_s ||P^t(s,.) - lambda||_1 <= 1/2, by matrix powering.
inline int mixing_time(const Eigen::MatrixXd& P, int t_max = 100000) {
  Eigen::RowVectorXd lam = stationary_distribution(P);
  Eigen::MatrixXd M = P;
  for (int t = 1; t <= t_max; ++t) {
    double worst = 0.0;
    for (int s = 0; s < M.rows(); ++s)
      worst = std::max(worst, (M.row(s) - lam).cwiseAbs().sum());
    if (worst <= 0.5) return t;
    M = M * P;
  }
  fail("NonConvergent", "mixing time exceeds t_max");
}

}  // namespace sg

#endif  // SG_EVALUATE_HPP_
