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

#ifndef ROBSUB_FPL_HPP_
#define ROBSUB_FPL_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace robsub {

/// Follow-the-Perturbed-Leader state: a perturbation q ~ U[0, 1/eta]^n drawn
/// once at construction and the running sum of past reward vectors. Playing
/// means maximizing (cumulative + q) . d over the decision set; the caller
/// owns the argmax oracle. eta = +inf is allowed for tests and yields q = 0.
class FplInstance {
 public:
  FplInstance(int dim, double eta, std::uint64_t seed);

  const Eigen::VectorXd& perturbation() const { return q_; }
  const Eigen::VectorXd& cumulative() const { return cumulative_; }
  Eigen::VectorXd perturbed_cumulative() const { return cumulative_ + q_; }
  double eta() const { return eta_; }

  // Call exactly once per round, after the decision.
  void accumulate(const Eigen::VectorXd& reward);

 private:
  double eta_;
  Eigen::VectorXd q_;
  Eigen::VectorXd cumulative_;
};

using LinearMaximizer = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// d_t = argmax_{d in D} (sum_{j<t} s_j + q) . d via the supplied oracle.
Eigen::VectorXd fpl_step(const FplInstance& inst, const LinearMaximizer& argmax);

}  // namespace robsub

#endif  // ROBSUB_FPL_HPP_
