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

#ifndef ROBSUB_SOFTMIN_HPP_
#define ROBSUB_SOFTMIN_HPP_

#include <Eigen/Dense>
#include <vector>

#include "robsub/multilinear.hpp"

namespace robsub {

struct SoftMinConfig {
  double alpha = 1.0;  // sharpness; supported up to 1e12 via the max shift
};

/// H = -(1/alpha) ln sum_i exp(-alpha g_i), evaluated as a shifted
/// log-sum-exp so that large alpha never overflows. Satisfies
/// g_min - ln(k)/alpha <= H <= g_min for all finite inputs.
double softmin_value(const Eigen::VectorXd& values, double alpha);

/// p_i proportional to exp(-alpha g_i); a probability vector, invariant under
/// adding a common constant to all g_i.
Eigen::VectorXd softmin_weights(const Eigen::VectorXd& values, double alpha);

/// grad H = sum_i p_i grad g_i for per-objective gradient rows (k x n).
Eigen::VectorXd softmin_gradient(const Eigen::MatrixXd& gradients, const Eigen::VectorXd& p);

/// Delta_e H(y) = sum_i p_i(y) Delta_e F_i(y) with weights taken from the
/// exact multilinear values at y. Componentwise nonnegative for monotone
/// objectives; l1 norm at most n when values lie in [0,1].
Eigen::VectorXd delta_H_exact(const Eigen::VectorXd& y,
                              const std::vector<MultilinearTable>& tables, double alpha);
Eigen::VectorXd delta_H_exact(const Eigen::VectorXd& y,
                              const std::vector<const MultilinearTable*>& tables, double alpha);

/// Sampled counterpart: the weights and every Delta_e F_i are estimated from
/// one shared pool of sampled sets, so all k objectives see identical draws.
Eigen::VectorXd delta_H_estimate(const Eigen::VectorXd& y,
                                 const std::vector<OraclePtr>& objectives, double alpha,
                                 const EstimatorConfig& cfg);

}  // namespace robsub

#endif  // ROBSUB_SOFTMIN_HPP_
