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

#ifndef ROBSUB_ONLINE_HPP_
#define ROBSUB_ONLINE_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/functions.hpp"
#include "robsub/matroid.hpp"
#include "robsub/oracle.hpp"

namespace robsub {

/// A non-adaptive adversary: the whole sequence of per-round objective
/// collections (values in [0,1]) is fixed before the run.
struct OnlineSchedule {
  GroundSet ground;
  int horizon = 0;
  int k = 0;
  std::vector<std::vector<OraclePtr>> rounds;  // horizon x k

  void validate() const;
};

// Adversary generators. All are deterministic given their arguments.
OnlineSchedule stationary_schedule(const std::vector<OraclePtr>& objectives, int horizon);
OnlineSchedule switching_schedule(const std::vector<OraclePtr>& first,
                                  const std::vector<OraclePtr>& second, int horizon,
                                  int switch_at);
// Perturbed family whose noise vector drifts: each period draws a fresh
// endpoint and rounds interpolate linearly between consecutive endpoints.
OnlineSchedule drifting_schedule(const OraclePtr& base, const PerturbedFamilySpec& spec,
                                 int horizon, int period);

struct OnlineConfig {
  double eta = 0.0;    // 0 = sqrt(D / (L A T)) with L = A = n, D = 2 rank(M)
  double alpha = 0.0;  // 0 = 4 ln(max(k,2)) max(n, T)
  double delta = 0.0;  // 0 = ell / 64
  int rounding_draws = 32;
  bool paper_params = false;  // alpha = n^2 T^2, delta = n^-6 T^-3 (n,T <= 3)
  bool adaptive_q = false;    // fresh perturbation per round
  std::uint64_t seed = 0;
};

struct RoundRecord {
  int t = 0;
  ElementSet played;
  std::vector<ElementSet> witness;       // <= ceil(ln(1/eps)) base-independent sets
  double payoff_min = 0.0;               // min_i of the empirical means below
  Eigen::VectorXd payoff_per_objective;  // mean over rounding draws of f_i^t
};

struct RegretReport {
  Eigen::VectorXd per_round_payoffs;
  double hindsight_value = 0.0;
  Eigen::VectorXd regret_curve;  // Regret_{1-eps}(t) for t = 1..T
  bool hindsight_exact = true;   // false when only lower-bounded (n > 16)
};

struct OnlineResult {
  std::vector<RoundRecord> rounds;
  RegretReport report;
  // Empirical FPL constants, reported rather than asserted.
  double max_reward_l1 = 0.0;       // max_t ||Delta H^t||_1
  double max_reward_dot = 0.0;      // max_t |z . Delta H^t|
  double eta_used = 0.0;
  double alpha_used = 0.0;
  double delta_used = 0.0;
  int ell = 0;
};

/// OnlineSoftMin: per round, an inner FPL-driven ascent over the tau grid
/// (one accumulator per grid point, all sharing one perturbation q), a swap
/// rounding of y_ell in the ell-fold union matroid to pick the played set,
/// then full-information updates Delta H^t at every grid point. Exact-mode
/// multilinear gradients; grounds limited to n <= 20.
OnlineResult online_softmin_run(const OnlineSchedule& schedule, const MatroidPtr& m,
                                double epsilon, const OnlineConfig& cfg = {});

/// Regret_{1-eps}(t) = (1-eps) max_{S in I} sum_{t'<=t} min_i f_i^t'(S)
///                     - sum_{t'<=t} payoff_t'. The hindsight benchmark
/// ranges over single independent sets; exhaustive for n <= 16, otherwise a
/// certified lower bound via the extended-greedy layers on the aggregated
/// objectives (flagged).
RegretReport regret_1_minus_eps(const OnlineSchedule& schedule, const Eigen::VectorXd& payoffs,
                                double epsilon, const MatroidPtr& m);

int online_layer_count(double epsilon);  // ceil(ln(1/eps))

}  // namespace robsub

#endif  // ROBSUB_ONLINE_HPP_
