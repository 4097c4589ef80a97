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

#include "robsub/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>

#include "robsub/functions.hpp"

namespace robsub {

namespace {

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1))};
}

MetricsRecord run_trial(const ExperimentConfig& cfg, int trial,
                        const Eigen::MatrixXd& ratings) {
  const std::uint64_t trial_seed = substream(cfg.seed, 100 + static_cast<std::uint64_t>(trial));
  auto start = std::chrono::steady_clock::now();

  GroundSet ground(cfg.n);
  auto base = std::make_shared<FacilityLocationFunction>(ground, ratings);

  PerturbedFamilySpec family_spec;
  family_spec.k = cfg.k;
  family_spec.lambda_size = cfg.lambda_size;
  family_spec.noise_scale = cfg.noise_scale;
  family_spec.seed = substream(trial_seed, 1);
  PerturbedFamily family = make_perturbed_family(base, family_spec);

  // Random composition: shuffle and deal the movies round-robin into q parts.
  std::vector<int> perm(cfg.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(substream(trial_seed, 2));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> parts(cfg.q);
  for (int i = 0; i < cfg.n; ++i) parts[i % cfg.q].push_back(perm[i]);
  auto matroid =
      std::make_shared<PartitionMatroid>(ground, parts, std::vector<int>(cfg.q, cfg.b));

  RobustInstance instance{ground, family.members, Constraint{matroid}, cfg.epsilon};
  RobustSolveOptions options;
  options.search = GammaSearch::kBinarySearch;
  BiCriteriaSolution sol = robust_offline_solve(instance, options);

  MetricsRecord record;
  record.trial = trial;
  record.oracle_calls = sol.oracle_calls;
  record.gamma = sol.gamma_used;
  record.ell = sol.ell;
  record.min_objective_value = sol.min_value();
  record.union_size = sol.union_set.size();
  record.per_part_sizes.assign(cfg.q, 0);
  for (int j = 0; j < cfg.q; ++j) {
    for (int e : parts[j]) {
      if (sol.union_set.contains(e)) ++record.per_part_sizes[j];
    }
  }
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace

ExperimentConfig ExperimentConfig::reference_scale() {
  ExperimentConfig cfg;
  cfg.n = 1000;
  cfg.num_users = 1000;
  cfg.k = 20;
  cfg.q = 10;
  cfg.b = 5;
  cfg.lambda_size = 100;
  cfg.epsilon = 0.01;
  cfg.trials = 20;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (n < 1 || num_users < 1 || k < 1 || q < 1 || b < 0 || trials < 1) {
    throw std::invalid_argument("experiment config needs positive sizes");
  }
  if (static_cast<long long>(q) * b > n) {
    throw std::invalid_argument("experiment needs q * b <= n");
  }
  if (lambda_size < 0 || lambda_size > n) {
    throw std::invalid_argument("experiment needs lambda_size <= n");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  if (sparsity < 0.0 || sparsity > 1.0) {
    throw std::invalid_argument("sparsity must lie in [0,1]");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  SyntheticRatingsConfig ratings_cfg;
  ratings_cfg.n = cfg.n;
  ratings_cfg.num_users = cfg.num_users;
  ratings_cfg.sparsity = cfg.sparsity;
  const Eigen::MatrixXd ratings = generate_synthetic_ratings(ratings_cfg, substream(cfg.seed, 7));

  std::vector<std::future<MetricsRecord>> futures;
  futures.reserve(cfg.trials);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    futures.push_back(
        std::async(std::launch::async, [&cfg, trial, &ratings] { return run_trial(cfg, trial, ratings); }));
  }

  ExperimentResult result;
  for (auto& f : futures) result.records.push_back(f.get());
  std::sort(result.records.begin(), result.records.end(),
            [](const MetricsRecord& a, const MetricsRecord& b) { return a.trial < b.trial; });

  std::vector<double> part_sizes, wall, calls, min_values;
  for (const auto& r : result.records) {
    for (int s : r.per_part_sizes) part_sizes.push_back(s);
    wall.push_back(r.wall_time_s);
    calls.push_back(static_cast<double>(r.oracle_calls));
    min_values.push_back(r.min_objective_value);
  }
  ExperimentSummary& summary = result.summary;
  summary.ell = robust_layer_count(cfg.k, cfg.epsilon);
  summary.part_size_bound = cfg.b * summary.ell;
  std::tie(summary.mean_part_size, summary.std_part_size) = mean_std(part_sizes);
  std::tie(summary.mean_wall_time_s, summary.std_wall_time_s) = mean_std(wall);
  std::tie(summary.mean_oracle_calls, summary.std_oracle_calls) = mean_std(calls);
  std::tie(summary.mean_min_value, summary.std_min_value) = mean_std(min_values);
  return result;
}

}  // namespace robsub
