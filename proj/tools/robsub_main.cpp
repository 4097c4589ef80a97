// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface: offline solvers, the online driver, brute-force
// oracles, structure validation, and the synthetic movie experiment.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "robsub/checks.hpp"
#include "robsub/continuous.hpp"
#include "robsub/experiment.hpp"
#include "robsub/io.hpp"
#include "robsub/online.hpp"

namespace {

using robsub::Json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::int64_t samples = 0;  // 0 = per-op defaults
  double epsilon = -1.0;     // < 0 = take the instance's value
  std::string output = "json";
  std::string out_path;      // empty = stdout
  std::string workdir;
  bool paper_params = false;
};

void emit(const GlobalOptions& g, const Json& j) {
  std::string text;
  if (g.output == "csv") {
    // Flat key,value view for quick shell consumption.
    std::ostringstream out;
    out << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      out << it.key() << ',' << it.value().dump() << '\n';
    }
    text = out.str();
  } else {
    text = j.dump(2) + "\n";
  }
  if (g.out_path.empty()) {
    std::cout << text;
  } else {
    robsub::write_text_file(g.out_path, text);
  }
}

robsub::RobustInstance load(const std::string& path, const GlobalOptions& g) {
  robsub::RobustInstance instance = robsub::load_instance(path);
  if (g.epsilon > 0) instance.epsilon = g.epsilon;
  return instance;
}

int run_validate(const std::string& path) {
  Json doc = Json::parse(robsub::read_text_file(path));
  robsub::GroundSet ground = robsub::ground_from_json(doc.at("ground"));
  bool ok = true;
  Json report = Json::object();

  if (doc.contains("objectives")) {
    auto objectives = robsub::objectives_from_json(doc.at("objectives"), ground);
    Json items = Json::array();
    for (std::size_t i = 0; i < objectives.size(); ++i) {
      robsub::StructureReport r = robsub::check_submodular_monotone(*objectives[i]);
      items.push_back({{"objective", i},
                       {"monotone", r.monotone},
                       {"submodular", r.submodular},
                       {"detail", r.describe()}});
      ok = ok && r.ok();
    }
    report["objectives"] = items;
  }
  if (doc.contains("constraint") &&
      doc.at("constraint").value("type", "") == std::string("explicit")) {
    std::vector<robsub::ElementSet> family;
    for (const auto& s : doc.at("constraint").at("independent_sets")) {
      family.push_back(robsub::ElementSet::of(ground.n, s.get<std::vector<int>>()));
    }
    robsub::MatroidAxiomReport axioms = robsub::check_matroid_axioms(ground.n, family);
    report["matroid"] = {{"ok", axioms.ok}, {"counterexample", axioms.failure}};
    ok = ok && axioms.ok;
  }
  report["ok"] = ok;
  std::cout << report.dump(2) << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust max-min submodular maximization"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "global random seed");
  app.add_option("--samples", g.samples, "Monte-Carlo sample override");
  app.add_option("--epsilon", g.epsilon, "override the instance epsilon");
  app.add_option("--output", g.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "write the main result here instead of stdout");
  app.add_option("--workdir", g.workdir, "resolve relative paths from this directory");
  app.add_flag("--paper-params", g.paper_params, "literal published parameters (tiny runs only)");

  std::string instance_path, schedule_path, config_path, trace_path, transcript_path,
      regret_csv_path;
  bool binary_search = false;
  bool no_lazy = false;

  auto* solve = app.add_subcommand("solve", "offline extended-greedy reduction");
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_flag("--binary-search", binary_search, "binary search over the gamma ladder");
  solve->add_flag("--no-lazy", no_lazy, "disable lazy marginal evaluation");

  auto* solve_cont = app.add_subcommand("solve-continuous", "continuous greedy + swap rounding");
  solve_cont->add_option("--instance", instance_path, "instance JSON")->required();
  double cont_delta = 0.01;
  int cont_repeats = 20;
  solve_cont->add_option("--delta", cont_delta, "ascent step size");
  solve_cont->add_option("--rounding-repeats", cont_repeats, "rounding attempts per gamma");
  solve_cont->add_option("--trace-out", trace_path, "write the final ascent trace JSON here");

  auto* solve_knap = app.add_subcommand("solve-knapsack", "bang-per-buck knapsack reduction");
  solve_knap->add_option("--instance", instance_path, "instance JSON")->required();
  solve_knap->add_flag("--binary-search", binary_search, "binary search over the gamma ladder");

  auto* solve_inter = app.add_subcommand("solve-intersection", "multi-matroid greedy reduction");
  solve_inter->add_option("--instance", instance_path, "instance JSON")->required();
  solve_inter->add_flag("--binary-search", binary_search, "binary search over the gamma ladder");

  auto* solve_dro = app.add_subcommand("solve-dro", "distributionally robust over Q vertices");
  solve_dro->add_option("--instance", instance_path, "instance JSON")->required();
  solve_dro->add_flag("--binary-search", binary_search, "binary search over the gamma ladder");

  auto* oracle = app.add_subcommand("oracle", "exhaustive max-min optimum");
  oracle->add_option("--instance", instance_path, "instance JSON")->required();

  auto* validate = app.add_subcommand("validate", "submodularity / matroid axiom checks");
  validate->add_option("--instance", instance_path, "instance JSON")->required();

  auto* online = app.add_subcommand("online", "OnlineSoftMin over an adversary schedule");
  online->add_option("--schedule", schedule_path, "schedule JSON")->required();
  double online_eps = 0.5, online_eta = 0.0, online_alpha = 0.0, online_delta = 0.0;
  int online_draws = 32;
  bool adaptive_q = false;
  online->add_option("--online-epsilon", online_eps, "bi-criteria epsilon");
  online->add_option("--eta", online_eta, "FPL perturbation scale");
  online->add_option("--alpha", online_alpha, "soft-min sharpness");
  online->add_option("--delta", online_delta, "inner grid step");
  online->add_option("--draws", online_draws, "rounding draws per round for payoff estimates");
  online->add_flag("--adaptive-q", adaptive_q, "fresh perturbation per round");
  online->add_option("--transcript", transcript_path, "write per-round JSONL here");
  online->add_option("--regret-csv", regret_csv_path, "write the regret curve CSV here");

  auto* experiment = app.add_subcommand("experiment", "synthetic movie-selection benchmark");
  experiment->add_option("--config", config_path, "experiment config JSON (defaults if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!g.workdir.empty()) std::filesystem::current_path(g.workdir);

    robsub::RobustSolveOptions options;
    options.search = binary_search ? robsub::GammaSearch::kBinarySearch
                                   : robsub::GammaSearch::kDescending;
    options.greedy.lazy = !no_lazy;

    if (solve->parsed()) {
      emit(g, robsub::solution_to_json(robsub::robust_offline_solve(load(instance_path, g), options)));
    } else if (solve_cont->parsed()) {
      robsub::RobustInstance instance = load(instance_path, g);
      robsub::ContinuousConfig cfg;
      cfg.delta = cont_delta;
      cfg.rounding_repeats = cont_repeats;
      cfg.seed = g.seed;
      robsub::BiCriteriaSolution sol = robsub::robust_continuous_solve(instance, cfg);
      if (!trace_path.empty()) {
        const auto* matroid = std::get_if<robsub::MatroidPtr>(&instance.constraint);
        robsub::AscentTrace trace = robsub::continuous_greedy_run(
            instance.objectives, sol.gamma_used, instance.epsilon / 2.0, **matroid, cfg);
        robsub::write_text_file(trace_path, robsub::trace_to_json(trace).dump(2) + "\n");
      }
      emit(g, robsub::solution_to_json(sol));
    } else if (solve_knap->parsed()) {
      emit(g, robsub::solution_to_json(robsub::robust_knapsack_solve(load(instance_path, g), options)));
    } else if (solve_inter->parsed()) {
      emit(g, robsub::solution_to_json(
                  robsub::robust_intersection_solve(load(instance_path, g), options)));
    } else if (solve_dro->parsed()) {
      robsub::RobustInstance instance = load(instance_path, g);
      const auto* dro =
          std::get_if<robsub::DistributionallyRobustConstraint>(&instance.constraint);
      if (!dro) throw std::invalid_argument("solve-dro needs a dro constraint");
      emit(g, robsub::solution_to_json(robsub::distributionally_robust_solve(
                  instance.objectives, dro->vertices, dro->matroid, instance.epsilon, options)));
    } else if (oracle->parsed()) {
      robsub::RobustInstance instance = load(instance_path, g);
      emit(g, robsub::brute_force_to_json(
                  robsub::brute_force_opt(instance.objectives, instance.constraint)));
    } else if (validate->parsed()) {
      return run_validate(instance_path);
    } else if (online->parsed()) {
      Json doc = Json::parse(robsub::read_text_file(schedule_path));
      robsub::GroundSet ground = robsub::ground_from_json(doc.at("ground"));
      robsub::MatroidPtr matroid = robsub::matroid_from_json(doc.at("matroid"), ground);
      const int horizon = doc.at("T").get<int>();
      const std::string type = doc.value("type", "stationary");
      robsub::OnlineSchedule schedule;
      if (type == "stationary") {
        schedule = robsub::stationary_schedule(
            robsub::objectives_from_json(doc.at("objectives"), ground), horizon);
      } else if (type == "switching") {
        schedule = robsub::switching_schedule(
            robsub::objectives_from_json(doc.at("first"), ground),
            robsub::objectives_from_json(doc.at("second"), ground), horizon,
            doc.value("switch_at", horizon / 2));
      } else if (type == "drifting") {
        robsub::PerturbedFamilySpec spec;
        const Json& fam = doc.at("spec");
        spec.k = fam.at("k").get<int>();
        spec.lambda_size = fam.at("lambda_size").get<int>();
        spec.noise_scale = fam.value("noise_scale", -1.0);
        spec.seed = fam.value("seed", g.seed);
        schedule = robsub::drifting_schedule(robsub::oracle_from_json(doc.at("base"), ground),
                                             spec, horizon, doc.value("period", 10));
      } else {
        throw std::invalid_argument("unknown schedule type: " + type);
      }
      robsub::OnlineConfig cfg;
      cfg.eta = online_eta;
      cfg.alpha = online_alpha;
      cfg.delta = online_delta;
      cfg.rounding_draws = online_draws;
      cfg.paper_params = g.paper_params;
      cfg.adaptive_q = adaptive_q;
      cfg.seed = g.seed;
      robsub::OnlineResult result = robsub::online_softmin_run(schedule, matroid, online_eps, cfg);
      if (!transcript_path.empty()) {
        std::ostringstream lines;
        for (const auto& r : result.rounds) lines << robsub::round_record_to_json(r).dump() << "\n";
        robsub::write_text_file(transcript_path, lines.str());
      }
      if (!regret_csv_path.empty()) {
        robsub::write_text_file(regret_csv_path, robsub::regret_to_csv(result.report));
      }
      Json out = robsub::regret_to_json(result.report);
      out["ell"] = result.ell;
      out["eta"] = result.eta_used;
      out["alpha"] = result.alpha_used;
      out["delta"] = result.delta_used;
      out["max_reward_l1"] = result.max_reward_l1;
      out["max_reward_dot"] = result.max_reward_dot;
      emit(g, out);
    } else if (experiment->parsed()) {
      robsub::ExperimentConfig cfg;
      if (!config_path.empty()) {
        Json doc = Json::parse(robsub::read_text_file(config_path));
        cfg.n = doc.value("n", cfg.n);
        cfg.num_users = doc.value("num_users", cfg.num_users);
        cfg.k = doc.value("k", cfg.k);
        cfg.q = doc.value("q", cfg.q);
        cfg.b = doc.value("b", cfg.b);
        cfg.lambda_size = doc.value("lambda_size", cfg.lambda_size);
        cfg.noise_scale = doc.value("noise_scale", cfg.noise_scale);
        cfg.epsilon = doc.value("epsilon", cfg.epsilon);
        cfg.sparsity = doc.value("sparsity", cfg.sparsity);
        cfg.trials = doc.value("trials", cfg.trials);
        cfg.seed = doc.value("seed", cfg.seed);
      }
      if (g.epsilon > 0) cfg.epsilon = g.epsilon;
      if (g.seed != 0) cfg.seed = g.seed;
      robsub::ExperimentResult result = robsub::run_experiment(cfg);
      emit(g, robsub::experiment_to_json(cfg, result));
    }
  } catch (const robsub::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
