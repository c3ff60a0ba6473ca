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

#ifndef SG_SOLVERS_BROUWER_HPP_
#define SG_SOLVERS_BROUWER_HPP_

// Gain-renormalization maps whose fixed points are exactly the Nash
// equilibria.  Per controlled row, y(a) = (pi(a) + U(a)) / (1 + sum U),
// where U(a) is the clipped gain of deviating to a: in value mode the
// own-state utility gain of a pure O-SSG deviation, in Bellman mode the
// clipped one-step error Psi.  Both maps are Lipschitz on the strategy
// polytope, and small displacement certifies an approximate NE.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sg/bellman.hpp"
#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/solvers/result.hpp"

namespace sg {

enum class BrouwerMode { kValue, kBellman };

inline const char* brouwer_mode_name(BrouwerMode m) {
  return m == BrouwerMode::kValue ? "value" : "bellman";
}

namespace detail {

// Rewrites pi's row at (i, s) by gain renormalization.
inline void renormalize_row(std::vector<double>& row,
                            const std::vector<double>& gain) {
  double total = 0.0;
  for (double u : gain) total += u;
  for (size_t a = 0; a < row.size(); ++a)
    row[a] = (row[a] + gain[a]) / (1.0 + total);
}

// Largest action count over the rows the map touches.  In value mode
// (O-SSGs) each player's single controlled row is its own-state row, so
// one scan of the controlled pairs serves both modes.
inline int brouwer_max_actions(const GameSpec& g) {
  int m = 1;
  for (auto [i, s] : g.control_pairs()) m = std::max(m, g.action_count(i, s));
  return m;
}

}  // namespace detail

inline Strategy brouwer_map(const GameSpec& g, const Strategy& pi,
                            BrouwerMode mode) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "brouwer_map requires discounted mode");
  Strategy out = pi;
  if (mode == BrouwerMode::kValue) {
    if (!classify_game(g).is_ossg)
      fail("WrongClass", "the value map needs an O-SSG");
    ValueProfile base = value_function(g, pi);
    for (int i = 0; i < g.num_players(); ++i) {
      int s = g.own_state(i);
      int m = g.action_count(i, s);
      std::vector<double> gain(m, 0.0);
      for (int a = 0; a < m; ++a) {
        Strategy dev = pi;
        std::fill(dev.dist[i][s].begin(), dev.dist[i][s].end(), 0.0);
        dev.dist[i][s][a] = 1.0;
        ValueProfile alt = value_function(g, dev);
        gain[a] = std::max(alt.V[i][s] - base.V[i][s], 0.0);
      }
      detail::renormalize_row(out.dist[i][s], gain);
    }
  } else {
    BellmanReport rep = bellman_errors(g, pi);
    size_t k = 0;
    for (auto [i, s] : g.control_pairs()) {
      int m = g.action_count(i, s);
      std::vector<double> gain(m, 0.0);
      for (int a = 0; a < m; ++a, ++k) gain[a] = std::max(rep.entries[k].psi, 0.0);
      detail::renormalize_row(out.dist[i][s], gain);
    }
  }
  return out;
}

// max-norm displacement ||f(pi) - pi||_inf over controlled entries.
inline double brouwer_residual(const GameSpec& g, const Strategy& pi,
                               BrouwerMode mode) {
  Strategy img = brouwer_map(g, pi, mode);
  double res = 0.0;
  for (auto [i, s] : g.control_pairs())
    for (int a = 0; a < g.action_count(i, s); ++a)
      res = std::max(res, std::abs(img.dist[i][s][a] - pi.dist[i][s][a]));
  return res;
}

// Lipschitz constant of the map in the max norm: 1 + 4 A^2/(1-gamma)^2
// with A the per-mode max action count.
inline double brouwer_lipschitz_bound(const GameSpec& g, BrouwerMode) {
  double A = detail::brouwer_max_actions(g);
  double U = 1.0 / (1.0 - g.discount.gamma);
  return 1.0 + 4.0 * A * A * U * U;
}

// Approximation guarantee from a displacement of eps_prime.
inline double brouwer_implied_epsilon(const GameSpec& g, BrouwerMode mode,
                                      double eps_prime) {
  double A = detail::brouwer_max_actions(g);
  double U = 1.0 / (1.0 - g.discount.gamma);
  if (mode == BrouwerMode::kValue) {
    double rho = U;
    return (8.0 * rho * rho * A * A + rho * A * U) *
           std::sqrt(eps_prime * (1.0 + A * U));
  }
  return 8.0 * A * A * U * U * std::sqrt(eps_prime * A);
}

struct BrouwerOptions {
  double eta = 0.5;          // damping: pi <- (1-eta) pi + eta f(pi)
  long max_iters = 250000;
  double tol = 1e-10;        // stop when the displacement drops below this
};

// Damped fixed-point iteration from the uniform profile.  Returns the
// best iterate seen; non-convergence is an outcome, not an error.
inline SolveResult brouwer_fixed_point_solve(const GameSpec& g,
                                             BrouwerMode mode,
                                             BrouwerOptions opt = {}) {
  Strategy pi = uniform_strategy(g);
  Strategy best = pi;
  double best_res = std::numeric_limits<double>::infinity();
  long it = 0;
  bool converged = false;
  for (; it < opt.max_iters; ++it) {
    Strategy img = brouwer_map(g, pi, mode);
    double res = 0.0;
    for (auto [i, s] : g.control_pairs())
      for (int a = 0; a < g.action_count(i, s); ++a)
        res = std::max(res, std::abs(img.dist[i][s][a] - pi.dist[i][s][a]));
    if (res < best_res) {
      best_res = res;
      best = pi;
    }
    if (res <= opt.tol) {
      converged = true;
      break;
    }
    for (auto [i, s] : g.control_pairs())
      for (int a = 0; a < g.action_count(i, s); ++a)
        pi.dist[i][s][a] = (1.0 - opt.eta) * pi.dist[i][s][a] +
                           opt.eta * img.dist[i][s][a];
  }

  SolveResult res;
  res.method = mode == BrouwerMode::kValue ? "brouwer-value" : "brouwer-bellman";
  res.strategy = best;
  res.iterations = it;
  res.outcome = converged ? "ok" : "no_convergence";
  res.fixed_point_residual = best_res;
  res.implied_epsilon = brouwer_implied_epsilon(g, mode, best_res);
  QChoice qc;
  qc.kind = mode == BrouwerMode::kValue ? QKind::kOwnState : QKind::kUniform;
  res.certificate = deviation_gap(g, best, qc);
  return res;
}

}  // namespace sg

#endif  // SG_SOLVERS_BROUWER_HPP_
