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

#ifndef ROBSUB_EXPERIMENT_HPP_
#define ROBSUB_EXPERIMENT_HPP_

#include <cstdint>
#include <vector>

#include "robsub/offline.hpp"
#include "robsub/synthetic.hpp"

namespace robsub {

/// Movie-selection experiment configuration: k perturbed facility-location
/// objectives over synthetic ratings, a q-part partition matroid with budget
/// b per part, and trials differing in the random partition composition.
struct ExperimentConfig {
  int n = 200;
  int num_users = 200;
  int k = 5;
  int q = 5;
  int b = 3;
  int lambda_size = 20;
  double noise_scale = -1.0;  // < 0 = the 1/n default
  double epsilon = 0.01;
  double sparsity = 0.1;
  int trials = 20;
  std::uint64_t seed = 0;

  // Published reference scale (not run by default: n=1000 users=1000 k=20
  // q=10 b=5 lambda=100 eps=0.01 trials=20).
  static ExperimentConfig reference_scale();

  void validate() const;
};

struct MetricsRecord {
  int trial = 0;
  double wall_time_s = 0.0;
  std::int64_t oracle_calls = 0;
  std::vector<int> per_part_sizes;
  int union_size = 0;
  double min_objective_value = 0.0;
  double gamma = 0.0;
  int ell = 0;
};

struct ExperimentSummary {
  int ell = 0;
  int part_size_bound = 0;  // b * ell
  double mean_part_size = 0.0;
  double std_part_size = 0.0;
  double mean_wall_time_s = 0.0;
  double std_wall_time_s = 0.0;
  double mean_oracle_calls = 0.0;
  double std_oracle_calls = 0.0;
  double mean_min_value = 0.0;
  double std_min_value = 0.0;
};

struct ExperimentResult {
  std::vector<MetricsRecord> records;
  ExperimentSummary summary;
};

/// Runs `trials` seeded instances: a fresh random partition composition and
/// perturbed family per trial, solved by the Theorem-1 reduction (binary
/// search over the gamma ladder). Trials execute concurrently; records are
/// aggregated in trial order, so output is seed-deterministic.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace robsub

#endif  // ROBSUB_EXPERIMENT_HPP_
