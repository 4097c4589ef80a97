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

#include "robsub/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "robsub/functions.hpp"

namespace robsub {

namespace {

Eigen::VectorXd vector_from_json(const Json& j) {
  Eigen::VectorXd v(j.size());
  Eigen::Index i = 0;
  for (const auto& x : j) v[i++] = x.get<double>();
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

RatingsCsv read_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open ratings csv: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("ratings csv is empty");

  RatingsCsv out;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) out.labels.push_back(cell);
  }
  const auto cols = static_cast<Eigen::Index>(out.labels.size());
  if (cols == 0) throw std::invalid_argument("ratings csv needs a header of element labels");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row_stream(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(row_stream, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("ratings csv row width mismatch");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("ratings csv needs at least one user row");

  out.ratings.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (Eigen::Index e = 0; e < cols; ++e) out.ratings(static_cast<Eigen::Index>(u), e) = rows[u][e];
  }
  return out;
}

void write_ratings_csv(const std::string& path, const Eigen::MatrixXd& ratings,
                       const std::vector<std::string>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != ratings.cols()) {
    throw std::invalid_argument("one label per ratings column required");
  }
  std::ostringstream out;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    if (e) out << ',';
    out << labels[e];
  }
  out << '\n';
  for (Eigen::Index u = 0; u < ratings.rows(); ++u) {
    for (Eigen::Index e = 0; e < ratings.cols(); ++e) {
      if (e) out << ',';
      out << ratings(u, e);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

GroundSet ground_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return GroundSet(n, std::move(labels));
}

OraclePtr oracle_from_json(const Json& j, const GroundSet& ground) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "modular") {
    return std::make_shared<ModularFunction>(ground, vector_from_json(j.at("weights")));
  }
  if (type == "coverage") {
    auto covers = j.at("covers").get<std::vector<std::vector<int>>>();
    Eigen::VectorXd weights;
    if (j.contains("universe_weights")) {
      weights = vector_from_json(j.at("universe_weights"));
    } else {
      int m = j.at("universe_size").get<int>();
      weights = Eigen::VectorXd::Ones(m);
    }
    return std::make_shared<CoverageFunction>(ground, std::move(covers), std::move(weights));
  }
  if (type == "facility_location") {
    double r_max = j.value("r_max", 5.0);
    Eigen::MatrixXd ratings;
    if (j.contains("ratings_csv")) {
      ratings = read_ratings_csv(j.at("ratings_csv").get<std::string>()).ratings;
    } else {
      auto rows = j.at("ratings").get<std::vector<std::vector<double>>>();
      ratings.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
      for (std::size_t u = 0; u < rows.size(); ++u) {
        for (std::size_t e = 0; e < rows[u].size(); ++e) {
          ratings(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(e)) = rows[u][e];
        }
      }
    }
    return std::make_shared<FacilityLocationFunction>(ground, std::move(ratings), r_max);
  }
  if (type == "truncated") {
    return std::make_shared<TruncatedOracle>(oracle_from_json(j.at("inner"), ground),
                                             j.at("gamma").get<double>());
  }
  throw std::invalid_argument("unknown oracle type: " + type);
}

std::vector<OraclePtr> objectives_from_json(const Json& j, const GroundSet& ground) {
  std::vector<OraclePtr> out;
  auto expand = [&](const Json& spec) {
    if (spec.at("type").get<std::string>() == "perturbed_family") {
      OraclePtr base = oracle_from_json(spec.at("base"), ground);
      const Json& fam = spec.at("spec");
      PerturbedFamilySpec family_spec;
      family_spec.k = fam.at("k").get<int>();
      family_spec.lambda_size = fam.at("lambda_size").get<int>();
      family_spec.noise_scale = fam.value("noise_scale", -1.0);
      family_spec.seed = fam.value("seed", 0ULL);
      for (auto& member : make_perturbed_family(base, family_spec).members) {
        out.push_back(std::move(member));
      }
    } else {
      out.push_back(oracle_from_json(spec, ground));
    }
  };
  if (j.is_array()) {
    for (const auto& spec : j) expand(spec);
  } else {
    expand(j);
  }
  return out;
}

MatroidPtr matroid_from_json(const Json& j, const GroundSet& ground) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    return std::make_shared<UniformMatroid>(ground, j.at("b").get<int>());
  }
  if (type == "partition") {
    return std::make_shared<PartitionMatroid>(ground,
                                              j.at("parts").get<std::vector<std::vector<int>>>(),
                                              j.at("budgets").get<std::vector<int>>());
  }
  if (type == "explicit") {
    std::vector<ElementSet> family;
    for (const auto& s : j.at("independent_sets")) {
      family.push_back(ElementSet::of(ground.n, s.get<std::vector<int>>()));
    }
    return std::make_shared<ExplicitMatroid>(ground, family);
  }
  throw std::invalid_argument("unknown matroid type: " + type);
}

Constraint constraint_from_json(const Json& j, const GroundSet& ground) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "knapsack") {
    return KnapsackConstraint(vector_from_json(j.at("costs")), j.value("capacity", 1.0));
  }
  if (type == "intersection") {
    std::vector<MatroidPtr> matroids;
    for (const auto& m : j.at("matroids")) matroids.push_back(matroid_from_json(m, ground));
    return matroids;
  }
  if (type == "dro") {
    DistributionallyRobustConstraint dro;
    for (const auto& q : j.at("vertices")) dro.vertices.push_back(vector_from_json(q));
    dro.matroid = matroid_from_json(j.at("matroid"), ground);
    return dro;
  }
  return matroid_from_json(j, ground);
}

RobustInstance instance_from_json(const Json& j) {
  RobustInstance instance;
  instance.ground = ground_from_json(j.at("ground"));
  instance.objectives = objectives_from_json(j.at("objectives"), instance.ground);
  instance.constraint = constraint_from_json(j.at("constraint"), instance.ground);
  instance.epsilon = j.value("epsilon", 0.2);
  instance.validate();
  return instance;
}

RobustInstance load_instance(const std::string& path) {
  return instance_from_json(Json::parse(read_text_file(path)));
}

Json set_to_json(const ElementSet& s) {
  Json out = Json::array();
  s.for_each([&](int e) { out.push_back(e); });
  return out;
}

ElementSet set_from_json(const Json& j, int n) {
  return ElementSet::of(n, j.get<std::vector<int>>());
}

Json solution_to_json(const BiCriteriaSolution& sol) {
  Json layers = Json::array();
  for (const auto& layer : sol.layers) layers.push_back(set_to_json(layer));
  Json out = {
      {"layers", layers},
      {"union", set_to_json(sol.union_set)},
      {"per_objective_values", vector_to_json(sol.values)},
      {"gamma", sol.gamma_used},
      {"ell", sol.ell},
      {"oracle_calls", sol.oracle_calls},
      {"wall_time_ms", sol.wall_time_ms},
  };
  if (!sol.layer_costs.empty()) {
    out["layer_costs"] = sol.layer_costs;
    out["union_cost"] = sol.union_cost;
  }
  if (sol.fallback) out["fallback"] = true;
  return out;
}

Json brute_force_to_json(const BruteForceResult& result) {
  return {{"opt", result.opt}, {"argmax", set_to_json(result.argmax)}};
}

Json trace_to_json(const AscentTrace& trace) {
  Json f_values = Json::array();
  for (Eigen::Index i = 0; i < trace.f_values.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index s = 0; s < trace.f_values.cols(); ++s) row.push_back(trace.f_values(i, s));
    f_values.push_back(row);
  }
  Json reference = Json::array();
  for (double tau : trace.grid) reference.push_back((1.0 - std::exp(-tau)) * trace.gamma);
  return {
      {"gamma", trace.gamma},         {"delta", trace.delta},
      {"ell", trace.ell},             {"grid", trace.grid},
      {"f_values", f_values},         {"reference_curve", reference},
      {"gamma_too_large", trace.gamma_too_large},
  };
}

Json experiment_to_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
  Json records = Json::array();
  for (const auto& r : result.records) {
    records.push_back({
        {"trial", r.trial},
        {"wall_time_s", r.wall_time_s},
        {"oracle_calls", r.oracle_calls},
        {"per_part_sizes", r.per_part_sizes},
        {"union_size", r.union_size},
        {"min_objective_value", r.min_objective_value},
        {"gamma", r.gamma},
        {"ell", r.ell},
    });
  }
  const ExperimentSummary& s = result.summary;
  return {
      {"config",
       {{"n", cfg.n},
        {"num_users", cfg.num_users},
        {"k", cfg.k},
        {"q", cfg.q},
        {"b", cfg.b},
        {"lambda_size", cfg.lambda_size},
        {"noise_scale", cfg.noise_scale},
        {"epsilon", cfg.epsilon},
        {"sparsity", cfg.sparsity},
        {"trials", cfg.trials},
        {"seed", cfg.seed}}},
      {"records", records},
      {"summary",
       {{"ell", s.ell},
        {"part_size_bound", s.part_size_bound},
        {"mean_part_size", s.mean_part_size},
        {"std_part_size", s.std_part_size},
        {"mean_wall_time_s", s.mean_wall_time_s},
        {"std_wall_time_s", s.std_wall_time_s},
        {"mean_oracle_calls", s.mean_oracle_calls},
        {"std_oracle_calls", s.std_oracle_calls},
        {"mean_min_value", s.mean_min_value},
        {"std_min_value", s.std_min_value}}},
  };
}

Json regret_to_json(const RegretReport& report) {
  return {
      {"per_round_payoffs", vector_to_json(report.per_round_payoffs)},
      {"hindsight_value", report.hindsight_value},
      {"hindsight_exact", report.hindsight_exact},
      {"regret_curve", vector_to_json(report.regret_curve)},
  };
}

std::string regret_to_csv(const RegretReport& report) {
  std::ostringstream out;
  out << "t,payoff,regret\n";
  for (Eigen::Index t = 0; t < report.per_round_payoffs.size(); ++t) {
    out << (t + 1) << ',' << report.per_round_payoffs[t] << ',' << report.regret_curve[t] << '\n';
  }
  return out.str();
}

Json round_record_to_json(const RoundRecord& record) {
  Json witness = Json::array();
  for (const auto& layer : record.witness) witness.push_back(set_to_json(layer));
  return {
      {"t", record.t},
      {"set", set_to_json(record.played)},
      {"witness", witness},
      {"payoff_min", record.payoff_min},
      {"per_objective_payoffs", vector_to_json(record.payoff_per_objective)},
  };
}

}  // namespace robsub
