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

// Command-line front end.  Every run prints a single JSON report whose
// first key is "schema_version"; exit code 0 on success, 1 on certified
// failures (infeasibility, non-convergence, invalid games), 2 on usage
// errors (bad flags, missing files, JSON syntax).

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sg/sg.hpp"

namespace {

using sg::Json;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) sg::fail("UsageError", "cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    sg::fail("UsageError", "JSON syntax error in " + path + ": " + e.what());
  }
}

struct Common {
  std::string out_path;
  long seed = 0;
  bool seed_given = false;
};

void emit(const Json& report, const Common& common) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (common.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.out_path);
  if (!out) sg::fail("UsageError", "cannot write file: " + common.out_path);
  out << text;
}

Json base_report(const std::string& command, const Common& common) {
  Json doc = Json::object();
  doc["schema_version"] = 1;
  doc["command"] = command;
  if (common.seed_given) doc["seed"] = common.seed;
  return doc;
}

void add_common(CLI::App* sub, Common* common) {
  sub->add_option("--out", common->out_path,
                  "write the report to this file instead of stdout");
  auto* opt = sub->add_option("--seed", common->seed,
                              "seed echoed into the report for traceability");
  sub->parse_complete_callback(
      [common, opt] { common->seed_given = opt->count() > 0; });
}

sg::CertifyMode parse_mode(const std::string& mode) {
  if (mode == "deviation") return sg::CertifyMode::kDeviationGap;
  if (mode == "necessary") return sg::CertifyMode::kBellmanNecessary;
  if (mode == "sufficient") return sg::CertifyMode::kBellmanSufficient;
  if (mode == "exact") return sg::CertifyMode::kExact;
  return sg::CertifyMode::kNonStationary;
}

int run_validate(const std::string& game_path, const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  sg::ValidationReport rep = sg::validate_game(g);
  Json doc = base_report("validate", common);
  Json vj = sg::validation_to_json(rep);
  for (auto& [k, v] : vj.items()) doc[k] = v;
  emit(doc, common);
  return rep.ok() ? 0 : 1;
}

int run_classify(const std::string& game_path, const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  sg::GameClass cls = sg::classify_game(g);
  Json doc = base_report("classify", common);
  doc["is_tbsg"] = cls.is_tbsg;
  doc["is_ossg"] = cls.is_ossg;
  doc["is_otbsg"] = cls.is_otbsg;
  doc["is_locreward"] = cls.is_locreward;
  doc["reward_sign"] = sg::reward_sign_name(cls.reward_sign);
  doc["deterministic_transitions"] = cls.deterministic_transitions;
  doc["action_independent_rewards"] = cls.action_independent_rewards;
  emit(doc, common);
  return 0;
}

int run_eval(const std::string& game_path, const std::string& strategy_path,
             const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  sg::Strategy pi = sg::strategy_from_json(g, load_json(strategy_path));
  sg::ValueProfile vp = sg::evaluate_strategy(g, pi);
  Json doc = base_report("eval", common);
  Json vj = sg::value_profile_to_json(g, vp);
  for (auto& [k, v] : vj.items()) doc[k] = v;
  emit(doc, common);
  return 0;
}

int run_certify(const std::string& game_path, const std::string& strategy_path,
                double eps, const std::string& mode_name,
                const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  sg::CertifyMode mode = parse_mode(mode_name);
  bool needs_eps = mode != sg::CertifyMode::kExact &&
                   mode != sg::CertifyMode::kDeviationGap;
  if (needs_eps && !(eps > 0.0))
    sg::fail("UsageError", "--eps must be positive for mode " + mode_name);
  sg::NeCertificate cert;
  if (mode == sg::CertifyMode::kNonStationary) {
    sg::NonStationaryStrategy bar =
        sg::nonstationary_from_json(g, load_json(strategy_path));
    cert = sg::nonstationary_certify(g, bar, eps);
  } else if (mode == sg::CertifyMode::kDeviationGap) {
    sg::Strategy pi = sg::strategy_from_json(g, load_json(strategy_path));
    cert = sg::deviation_gap(g, pi, sg::natural_q(g), eps);
  } else {
    sg::Strategy pi = sg::strategy_from_json(g, load_json(strategy_path));
    cert = sg::check_bellman_ne(g, pi, std::max(eps, 0.0), mode);
  }
  Json doc = base_report("certify", common);
  doc["certificate"] = sg::certificate_to_json(g, cert);
  emit(doc, common);
  return cert.pass ? 0 : 1;
}

int solve_report(const sg::GameSpec& g, const sg::SolveResult& res,
                 const Common& common) {
  Json doc = base_report("solve", common);
  doc["method"] = res.method;
  doc["outcome"] = res.outcome;
  doc["iterations"] = res.iterations;
  if (res.method == "bi") doc["horizon"] = res.horizon;
  if (res.method == "brouwer-value" || res.method == "brouwer-bellman") {
    doc["fixed_point_residual"] = res.fixed_point_residual;
    doc["implied_epsilon"] = res.implied_epsilon;
  }
  if (!res.potential_trace.empty()) doc["potential_trace"] = res.potential_trace;
  if (res.is_nonstationary)
    doc["nonstationary"] = sg::nonstationary_to_json(g, res.nonstationary);
  else
    doc["strategy"] = sg::strategy_to_json(g, res.strategy);
  doc["certificate"] = sg::certificate_to_json(g, res.certificate);
  emit(doc, common);
  return res.outcome == "ok" ? 0 : 1;
}

int run_solve(const std::string& game_path, const std::string& method,
              double eps, double budget, double eta, long max_iters,
              const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  if (method == "enumerate") {
    sg::EnumerationResult res =
        sg::pure_ne_enumerate(g, eps, static_cast<long>(budget));
    Json doc = base_report("solve", common);
    doc["method"] = "enumerate";
    doc["outcome"] = "ok";
    doc["examined"] = res.examined;
    Json list = Json::array();
    for (const auto& pe : res.equilibria) {
      Json row = Json::object();
      row["strategy"] = sg::strategy_to_json(g, pe.strategy);
      row["certificate"] = sg::certificate_to_json(g, pe.certificate);
      list.push_back(std::move(row));
    }
    doc["equilibria"] = std::move(list);
    emit(doc, common);
    return 0;
  }
  sg::SolveResult res;
  if (method == "bi") {
    res = sg::backward_induction(g, eps);
  } else if (method == "lp-net") {
    res = sg::brute_force_value_net(g, eps, budget);
  } else if (method == "strategy-iter") {
    res = sg::strategy_iteration(g, eps);
  } else if (method == "cycle") {
    res = sg::cycle_ne_graph(g);
  } else {
    sg::BrouwerOptions opt;
    opt.eta = eta;
    opt.max_iters = max_iters;
    res = sg::brouwer_fixed_point_solve(g,
                                        method == "brouwer-value"
                                            ? sg::BrouwerMode::kValue
                                            : sg::BrouwerMode::kBellman,
                                        opt);
  }
  return solve_report(g, res, common);
}

void merge_game(Json& doc, const sg::GameSpec& g) {
  Json gj = sg::game_to_json(g);
  for (auto& [k, v] : gj.items()) doc[k] = v;
}

int run_reduce(const std::string& game_path, const std::string& to,
               double gamma_prime, bool gamma_prime_given, double t_mix,
               double eps, const Common& common) {
  sg::GameSpec g = sg::game_from_json(load_json(game_path));
  Json doc = base_report("reduce", common);
  doc["to"] = to;
  if (to == "ossg") {
    sg::CopyReduction red = sg::simsg_to_ossg(g);
    merge_game(doc, red.game);
    Json pm = Json::object();
    for (int i = 0; i < red.base_players; ++i)
      for (int s = 0; s < red.base_states; ++s) {
        Json row = Json::object();
        row["player"] = g.player_names[i];
        row["state"] = g.states[s].name;
        pm[red.game.player_names[red.copy_index(i, s)]] = std::move(row);
      }
    doc["player_map"] = std::move(pm);
  } else if (to == "absorbing" ||
             (to == "discounted" &&
              g.discount.mode == sg::DiscountMode::kDiscounted)) {
    if (to == "absorbing") {
      gamma_prime = 1.0;
    } else if (!gamma_prime_given) {
      sg::fail("UsageError", "--gamma-prime is required for --to discounted");
    }
    sg::AugmentedGame aug = sg::discounted_to_absorbing(g, gamma_prime);
    merge_game(doc, aug.game);
    Json sm = Json::object();
    sm["absorbing_state"] = aug.game.states[aug.absorb_state].name;
    sm["stopper_player"] = aug.game.player_names[aug.absorb_player];
    doc["state_map"] = std::move(sm);
  } else if (to == "discounted") {
    if (!(t_mix > 0.0))
      sg::fail("UsageError", "--tmix is required for average inputs");
    sg::AverageReduction red = sg::average_to_discounted(g, t_mix, eps);
    merge_game(doc, red.game);
    doc["t_mix"] = t_mix;
    Json adv = Json::object();
    adv["gamma"] = red.advice.gamma;
    adv["certify_eps"] = red.advice.certify_eps;
    adv["value_gap_bound"] = red.advice.value_gap_bound;
    doc["advice"] = std::move(adv);
  }
  emit(doc, common);
  return 0;
}

int run_gadget(const std::string& circuit_path, double gamma, double eps,
               const Common& common) {
  sg::CircuitSpec circuit = sg::circuit_from_json(load_json(circuit_path));
  sg::GadgetBuild build = sg::gcircuit_build(circuit, gamma, eps);
  Json doc = base_report("gadget", common);
  merge_game(doc, build.game);
  Json nm = Json::object();
  for (const auto& [node, b] : build.node_map) {
    Json row = Json::object();
    row["player"] = build.game.player_names[b.player];
    row["state"] = build.game.states[b.state].name;
    nm[node] = std::move(row);
  }
  doc["node_map"] = std::move(nm);
  doc["L"] = build.params.L;
  doc["delta"] = build.params.delta;
  doc["delta_cmp"] = build.params.delta_cmp;
  doc["eps"] = build.params.eps;
  emit(doc, common);
  return 0;
}

int run_ham(const std::string& graph_path, double gamma,
            const Common& common) {
  sg::DirectedGraph graph = sg::graph_from_json(load_json(graph_path));
  sg::HamiltonianBuild build = sg::hamiltonian_game_build(graph, gamma);
  Json doc = base_report("ham", common);
  merge_game(doc, build.game);
  Json vm = Json::object();
  for (int i = 0; i < build.L; ++i) {
    Json row = Json::object();
    row["long_state"] = build.game.states[build.long_state[i]].name;
    row["short_state"] = build.game.states[build.short_state[i]].name;
    vm[build.vertices[i]] = std::move(row);
  }
  doc["vertex_map"] = std::move(vm);
  doc["L"] = build.L;
  doc["delta"] = build.delta;
  emit(doc, common);
  return 0;
}

int report_error(const sg::SgError& e, const Common& common) {
  Json doc = Json::object();
  doc["schema_version"] = 1;
  Json err = Json::object();
  err["kind"] = e.kind();
  err["message"] = e.what();
  doc["error"] = std::move(err);
  try {
    emit(doc, common);
  } catch (const sg::SgError&) {
    std::cout << doc.dump(2) << "\n";
  }
  std::cerr << e.what() << "\n";
  return e.kind() == "UsageError" ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for n-player discounted stochastic games"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  auto gamma_check = [](const std::string& v) -> std::string {
    try {
      double x = std::stod(v);
      if (x > 0.0 && x < 1.0) return "";
    } catch (const std::exception&) {
    }
    return "must lie strictly between 0 and 1";
  };

  auto* validate = app.add_subcommand("validate", "check a game file");
  {
    static std::string game_path;
    validate->add_option("game", game_path, "game JSON")->required();
    add_common(validate, &common);
    validate->callback(
        [&] { action = [&] { return run_validate(game_path, common); }; });
  }

  auto* classify = app.add_subcommand("classify", "report game classes");
  {
    static std::string game_path;
    classify->add_option("game", game_path, "game JSON")->required();
    add_common(classify, &common);
    classify->callback(
        [&] { action = [&] { return run_classify(game_path, common); }; });
  }

  auto* eval = app.add_subcommand("eval", "evaluate a stationary strategy");
  {
    static std::string game_path, strategy_path;
    eval->add_option("game", game_path, "game JSON")->required();
    eval->add_option("--strategy", strategy_path, "strategy JSON")->required();
    add_common(eval, &common);
    eval->callback([&] {
      action = [&] { return run_eval(game_path, strategy_path, common); };
    });
  }

  auto* solve = app.add_subcommand("solve", "compute an approximate NE");
  {
    static std::string game_path, method;
    static double eps = 0.1, budget = 1e7, eta = 0.5;
    static long max_iters = 250000;
    solve->add_option("game", game_path, "game JSON")->required();
    solve
        ->add_option("--method", method,
                     "bi | lp-net | strategy-iter | cycle | brouwer-value | "
                     "brouwer-bellman | enumerate")
        ->required()
        ->check(CLI::IsMember({"bi", "lp-net", "strategy-iter", "cycle",
                               "brouwer-value", "brouwer-bellman",
                               "enumerate"}));
    solve->add_option("--eps", eps, "target accuracy (default 0.1)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--budget", budget,
                      "candidate budget for lp-net / enumerate")
        ->check(CLI::PositiveNumber);
    solve->add_option("--eta", eta, "Brouwer damping factor in (0, 1]");
    solve->add_option("--max-iters", max_iters, "Brouwer iteration cap")
        ->check(CLI::PositiveNumber);
    add_common(solve, &common);
    solve->callback([&] {
      action = [&] {
        return run_solve(game_path, method, eps, budget, eta, max_iters,
                         common);
      };
    });
  }

  auto* certify = app.add_subcommand("certify", "certify a strategy profile");
  {
    static std::string game_path, strategy_path, mode = "deviation";
    static double eps = -1.0;
    certify->add_option("game", game_path, "game JSON")->required();
    certify->add_option("strategy", strategy_path, "strategy JSON")
        ->required();
    certify->add_option("--eps", eps, "accuracy to certify at")
        ->check(CLI::PositiveNumber);
    certify
        ->add_option("--mode", mode,
                     "deviation | necessary | sufficient | exact | "
                     "nonstationary")
        ->check(CLI::IsMember({"deviation", "necessary", "sufficient", "exact",
                               "nonstationary"}));
    add_common(certify, &common);
    certify->callback([&] {
      action = [&] {
        return run_certify(game_path, strategy_path, eps, mode, common);
      };
    });
  }

  auto* reduce = app.add_subcommand("reduce", "rebuild under another model");
  {
    static std::string game_path, to;
    static double gamma_prime = 0.0, t_mix = 0.0, eps = 0.1;
    static CLI::Option* gp_opt;
    reduce->add_option("game", game_path, "game JSON")->required();
    reduce->add_option("--to", to, "ossg | absorbing | discounted")
        ->required()
        ->check(CLI::IsMember({"ossg", "absorbing", "discounted"}));
    gp_opt = reduce->add_option("--gamma-prime", gamma_prime,
                                "coarser discount for discounted inputs");
    reduce->add_option("--tmix", t_mix, "mixing time for average inputs")
        ->check(CLI::PositiveNumber);
    reduce->add_option("--eps", eps, "accuracy for average inputs")
        ->check(CLI::PositiveNumber);
    add_common(reduce, &common);
    reduce->callback([&] {
      action = [&] {
        return run_reduce(game_path, to, gamma_prime, gp_opt->count() > 0,
                          t_mix, eps, common);
      };
    });
  }

  auto* gadget = app.add_subcommand("gadget", "build a circuit gadget game");
  {
    static std::string circuit_path;
    static double gamma = 0.5, eps = 0.25;
    gadget->add_option("--circuit", circuit_path, "circuit JSON")->required();
    gadget->add_option("--gamma", gamma, "discount (default 0.5)")
        ->check(gamma_check);
    gadget->add_option("--eps", eps, "gate accuracy (default 0.25)")
        ->check(gamma_check);
    add_common(gadget, &common);
    gadget->callback([&] {
      action = [&] { return run_gadget(circuit_path, gamma, eps, common); };
    });
  }

  auto* ham = app.add_subcommand("ham", "build a Hamiltonian-cycle game");
  {
    static std::string graph_path;
    static double gamma = 0.5;
    ham->add_option("--graph", graph_path, "graph JSON")->required();
    ham->add_option("--gamma", gamma, "discount (default 0.5)")
        ->check(gamma_check);
    add_common(ham, &common);
    ham->callback(
        [&] { action = [&] { return run_ham(graph_path, gamma, common); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const sg::SgError& e) {
    return report_error(e, common);
  }
}
