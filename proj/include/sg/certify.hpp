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

#ifndef SG_CERTIFY_HPP_
#define SG_CERTIFY_HPP_

// Equilibrium certification.  Deviation gaps use exact policy-iteration
// best responses, so the resulting epsilon is tight, not merely an upper
// bound.  The Bellman checks trade tightness for speed: a strategy whose
// worst Bellman error is below (1-gamma)eps is an eps-NE (sufficient), and
// any eps-NE under the uniform initial distribution keeps the worst error
// below |S|eps (necessary).  Every certificate adds a fixed 1e-10 slack to
// eps to absorb linear-algebra round-off.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sg/bellman.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"

namespace sg {

enum class CertifyMode {
  kDeviationGap,
  kBellmanNecessary,
  kBellmanSufficient,
  kExact,
  kNonStationary,
};

inline const char* certify_mode_name(CertifyMode m) {
  switch (m) {
    case CertifyMode::kDeviationGap: return "deviation";
    case CertifyMode::kBellmanNecessary: return "necessary";
    case CertifyMode::kBellmanSufficient: return "sufficient";
    case CertifyMode::kExact: return "exact";
    case CertifyMode::kNonStationary: return "nonstationary";
  }
  return "?";
}

struct NeCertificate {
  CertifyMode mode = CertifyMode::kDeviationGap;
  double epsilon = 0.0;
  std::vector<double> player_gaps;
  double max_gap = 0.0;
  bool pass = false;
  // Witness of the worst violation (informational on pass).
  bool has_witness = false;
  int witness_player = -1;
  int witness_state = -1;
  int witness_action = -1;
};

constexpr double kCertSlack = 1e-10;

// Which scalar utility the certificate is about.
enum class QKind {
  kUniform,   // u_i = <uniform q, V_i>
  kOwnState,  // upsilon_i = V_i(s_i); requires every player to own a state
  kCustom,    // a caller-supplied distribution, shared by all players
};

struct QChoice {
  QKind kind = QKind::kUniform;
  InitialDistribution custom;
};

// Own-state utilities when every player owns exactly one state (the
// natural reading for O-games), uniform utilities otherwise.
inline QChoice natural_q(const GameSpec& g) {
  QChoice qc;
  qc.kind = QKind::kOwnState;
  for (int i = 0; i < g.num_players(); ++i) {
    if (g.own_state(i) < 0) {
      qc.kind = QKind::kUniform;
      break;
    }
  }
  return qc;
}

inline InitialDistribution q_for_player(const GameSpec& g, const QChoice& qc,
                                        int player) {
  switch (qc.kind) {
    case QKind::kUniform: return uniform_q(g);
    case QKind::kOwnState: {
      int s = g.own_state(player);
      if (s < 0)
        fail("WrongClass", "player " + g.player_names[player] +
                               " does not control exactly one state");
      return point_q(g, s);
    }
    case QKind::kCustom: return qc.custom;
  }
  fail("WrongClass", "unknown utility mode");
}

// gap_i = u_i(best response, pi_{-i}) - u_i(pi), exact per player.  When
// eps < 0 the certificate reports the measured max gap as its epsilon and
// passes by definition; otherwise pass iff max gap <= eps + 1e-10.
inline NeCertificate deviation_gap(const GameSpec& g, const Strategy& pi,
                                   const QChoice& qc = {}, double eps = -1.0) {
  check_strategy(g, pi);
  int n = g.num_players();
  NeCertificate cert;
  cert.mode = CertifyMode::kDeviationGap;
  cert.player_gaps.assign(n, 0.0);
  cert.max_gap = 0.0;
  // V is independent of q, so one base solve serves every player.
  ValueProfile base = value_function(g, pi);
  int worst = -1;
  std::vector<std::vector<double>> worst_policy;
  const ValueProfile* worst_values = nullptr;
  ValueProfile worst_values_store;
  for (int i = 0; i < n; ++i) {
    // A player with one action everywhere has nothing to deviate to.
    bool any_choice = false;
    for (int s = 0; s < g.num_states(); ++s)
      if (g.action_count(i, s) > 1) any_choice = true;
    if (!any_choice) continue;
    BestResponse br = best_response(g, i, pi);
    InitialDistribution qi = q_for_player(g, qc, i);
    double u_br = 0.0, u_pi = 0.0;
    for (int s = 0; s < g.num_states(); ++s) {
      u_br += qi.q[s] * br.values.V[i][s];
      u_pi += qi.q[s] * base.V[i][s];
    }
    cert.player_gaps[i] = u_br - u_pi;
    if (cert.player_gaps[i] > cert.max_gap) {
      cert.max_gap = cert.player_gaps[i];
      worst = i;
      worst_policy = br.policy;
      worst_values_store = std::move(br.values);
      worst_values = &worst_values_store;
    }
  }
  if (worst >= 0 && worst_values != nullptr) {
    // Witness: the controlled state where the best response gains most.
    double top = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < g.num_states(); ++s) {
      if (g.action_count(worst, s) == 0) continue;
      double d = worst_values->V[worst][s] - base.V[worst][s];
      if (d > top) {
        top = d;
        cert.witness_player = worst;
        cert.witness_state = s;
        for (size_t a = 0; a < worst_policy[s].size(); ++a)
          if (worst_policy[s][a] == 1.0)
            cert.witness_action = static_cast<int>(a);
      }
    }
    cert.has_witness = cert.witness_state >= 0;
  }
  if (eps < 0.0) {
    cert.epsilon = cert.max_gap;
    cert.pass = true;
  } else {
    cert.epsilon = eps;
    cert.pass = cert.max_gap <= eps + kCertSlack;
  }
  return cert;
}

// Bellman-condition certificates over Psi (Appendix-style slacks):
//   Exact:      max Psi <= 1e-10 at controlled states and the on-policy
//               identity holds at uncontrolled states;
//   Necessary:  max Psi <= |S| * eps   (holds for any eps-NE, uniform q);
//   Sufficient: max Psi <= (1-gamma) * eps  (implies an eps-NE, any q).
inline NeCertificate check_bellman_ne(const GameSpec& g, const Strategy& pi,
                                      double eps, CertifyMode mode) {
  if (mode != CertifyMode::kExact && mode != CertifyMode::kBellmanNecessary &&
      mode != CertifyMode::kBellmanSufficient)
    fail("WrongClass", "check_bellman_ne mode must be a Bellman mode");
  ValueProfile vp = value_function(g, pi);
  BellmanReport rep = bellman_errors(g, pi, &vp);

  NeCertificate cert;
  cert.mode = mode;
  cert.epsilon = eps;
  cert.player_gaps = max_psi_per_player(g, rep);
  cert.max_gap = 0.0;
  const BellmanEntry* worst = nullptr;
  for (const auto& e : rep.entries)
    if (worst == nullptr || e.psi > worst->psi) worst = &e;
  if (worst != nullptr) {
    cert.max_gap = std::max(0.0, worst->psi);
    cert.has_witness = true;
    cert.witness_player = worst->player;
    cert.witness_state = worst->state;
    cert.witness_action = worst->action;
  }

  double threshold;
  switch (mode) {
    case CertifyMode::kExact: threshold = 0.0; break;
    case CertifyMode::kBellmanNecessary:
      threshold = g.num_states() * eps;
      break;
    default: threshold = (1.0 - g.discount.gamma) * eps; break;
  }
  cert.pass = cert.max_gap <= threshold + kCertSlack;

  if (mode == CertifyMode::kExact && cert.pass) {
    // Uncontrolled states must satisfy the on-policy equality too.
    Eigen::VectorXd prow;
    double rdev;
    for (int i = 0; i < g.num_players() && cert.pass; ++i) {
      Eigen::VectorXd Vi(g.num_states());
      for (int s = 0; s < g.num_states(); ++s) Vi(s) = vp.V[i][s];
      for (int s = 0; s < g.num_states(); ++s) {
        if (g.controls(i, s)) continue;
        one_step_deviation(g, pi, s, i, -1, &prow, &rdev);
        double defect =
            std::abs(rdev + g.discount.gamma * prow.dot(Vi) - Vi(s));
        if (defect > kCertSlack) {
          cert.pass = false;
          cert.has_witness = true;
          cert.witness_player = i;
          cert.witness_state = s;
          cert.witness_action = -1;
          cert.max_gap = std::max(cert.max_gap, defect);
        }
      }
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Pseudo-linearity probe

// Utility along the probe: V_i at the player's lowest-index controlled
// state.  This is upsilon_i on O-games and pins a single scalar on games
// where the player controls several states (the interesting failure case).
inline double probe_utility(const GameSpec& g, int player,
                            const ValueProfile& vp) {
  for (int s = 0; s < g.num_states(); ++s)
    if (g.controls(player, s)) return vp.V[player][s];
  fail("WrongClass",
       "player " + g.player_names[player] + " controls no state");
}

struct ProbePoint {
  double theta = 0.0;
  double u = 0.0;
  double ratio = 0.0;   // (u(theta) - u(0)) / (u(1) - u(0))
  bool in_bounds = false;  // ratio within [(1-gamma)t, t/(1-gamma)] once the
                           // segment is oriented from its worse endpoint
};

struct ProbeReport {
  double u_base = 0.0;
  double u_alt = 0.0;
  bool degenerate = false;  // |u_alt - u_base| <= 1e-8: ratios undefined
  std::vector<ProbePoint> points;
  bool all_in_bounds = false;
  bool monotone = false;  // u weakly monotone along 0, grid..., 1
};

// Walks the segment theta * pi_b + (1-theta) * pi_a for one player, other
// players fixed at `context`.  Deliberately callable on any discounted
// game: outside O-SSG the bounds may fail, which is the point.
inline ProbeReport pseudo_linearity_probe(const GameSpec& g, int player,
                                          const std::vector<std::vector<double>>& pi_a,
                                          const std::vector<std::vector<double>>& pi_b,
                                          const Strategy& context,
                                          const std::vector<double>& theta_grid) {
  if (player < 0 || player >= g.num_players())
    fail("PlayerOutOfRange", "no player with index " + std::to_string(player));
  Strategy base = mix_strategy(g, context, player, pi_a, 1.0);
  Strategy alt = mix_strategy(g, context, player, pi_b, 1.0);
  ProbeReport rep;
  rep.u_base = probe_utility(g, player, value_function(g, base));
  rep.u_alt = probe_utility(g, player, value_function(g, alt));
  double denom = rep.u_alt - rep.u_base;
  rep.degenerate = std::abs(denom) <= 1e-8;

  double gamma = g.discount.gamma;
  std::vector<double> us;
  us.push_back(rep.u_base);
  rep.all_in_bounds = !rep.degenerate;
  for (double theta : theta_grid) {
    Strategy mixed = mix_strategy(g, base, player, pi_b, theta);
    ProbePoint pt;
    pt.theta = theta;
    pt.u = probe_utility(g, player, value_function(g, mixed));
    us.push_back(pt.u);
    if (!rep.degenerate) {
      pt.ratio = (pt.u - rep.u_base) / denom;
      // The slope bounds order the endpoints by utility; measure from the
      // worse one so they apply whichever way this segment improves.
      double t_up = denom > 0.0 ? theta : 1.0 - theta;
      double r_up = denom > 0.0 ? pt.ratio : 1.0 - pt.ratio;
      pt.in_bounds = r_up >= (1.0 - gamma) * t_up - 1e-8 &&
                     r_up <= t_up / (1.0 - gamma) + 1e-8;
      if (!pt.in_bounds) rep.all_in_bounds = false;
    }
    rep.points.push_back(pt);
  }
  us.push_back(rep.u_alt);
  bool up = true, down = true;
  for (size_t k = 1; k < us.size(); ++k) {
    if (us[k] < us[k - 1] - 1e-10) up = false;
    if (us[k] > us[k - 1] + 1e-10) down = false;
  }
  rep.monotone = up || down;
  return rep;
}

// ---------------------------------------------------------------------------
// Non-stationary certification

// Certifies the output format of backward induction: every step must be a
// one-step best response against the remaining horizon (slack 1e-10), and
// the horizon must be long enough that the discarded tail costs at most
// eps/2, i.e. gamma^H/(1-gamma) <= eps/2.
inline NeCertificate nonstationary_certify(const GameSpec& g,
                                           const NonStationaryStrategy& bar,
                                           double eps) {
  if (g.discount.mode != DiscountMode::kDiscounted)
    fail("InvalidGame", "nonstationary_certify requires discounted mode");
  int H = static_cast<int>(bar.steps.size());
  if (H == 0) fail("HorizonTooShort", "empty strategy");
  double gamma = g.discount.gamma;
  double tail = std::pow(gamma, H) / (1.0 - gamma);
  if (tail > eps / 2.0)
    fail("HorizonTooShort",
         "gamma^H/(1-gamma) = " + std::to_string(tail) + " exceeds eps/2");

  int S = g.num_states(), n = g.num_players();
  NeCertificate cert;
  cert.mode = CertifyMode::kNonStationary;
  cert.epsilon = eps;
  cert.player_gaps.assign(n, 0.0);
  cert.pass = true;

  // U[h] = value of playing steps h..H-1 and nothing afterwards.
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(S, n);
  Eigen::VectorXd prow;
  double rdev;
  for (int h = H - 1; h >= 0; --h) {
    check_strategy(g, bar.steps[h]);
    InducedChain ch = induced_chain(g, bar.steps[h]);
    Eigen::MatrixXd next = ch.r + gamma * ch.P * U;
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s < S; ++s) {
        int m = g.action_count(i, s);
        if (m == 0) continue;
        for (int a = 0; a < m; ++a) {
          one_step_deviation(g, bar.steps[h], s, i, a, &prow, &rdev);
          double q = rdev + gamma * prow.dot(U.col(i));
          double slack = q - next(s, i);
          cert.player_gaps[i] = std::max(cert.player_gaps[i], slack);
          if (slack > cert.max_gap) {
            cert.max_gap = slack;
            cert.has_witness = true;
            cert.witness_player = i;
            cert.witness_state = s;
            cert.witness_action = a;
          }
          if (slack > kCertSlack) cert.pass = false;
        }
      }
    }
    U = next;
  }
  return cert;
}

}  // namespace sg

#endif  // SG_CERTIFY_HPP_
