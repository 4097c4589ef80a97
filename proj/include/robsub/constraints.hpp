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

#ifndef ROBSUB_CONSTRAINTS_HPP_
#define ROBSUB_CONSTRAINTS_HPP_

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "robsub/matroid.hpp"
#include "robsub/oracle.hpp"

namespace robsub {

// K = {S : sum_{e in S} c_e <= capacity}, c_e > 0, capacity normalized to 1.
struct KnapsackConstraint {
  Eigen::VectorXd costs;
  double capacity = 1.0;

  KnapsackConstraint() = default;
  KnapsackConstraint(Eigen::VectorXd c, double cap = 1.0) : costs(std::move(c)), capacity(cap) {
    if ((costs.array() <= 0).any()) throw std::invalid_argument("knapsack costs must be positive");
    if (capacity <= 0) throw std::invalid_argument("knapsack capacity must be positive");
  }

  double cost(const ElementSet& s) const {
    double total = 0.0;
    s.for_each([&](int e) { total += costs[e]; });
    return total;
  }
  bool feasible(const ElementSet& s) const { return cost(s) <= capacity + 1e-12; }
};

// Distributionally robust data: extreme points of a polyhedral Q inside the
// probability simplex, plus the matroid the sets are drawn from.
struct DistributionallyRobustConstraint {
  std::vector<Eigen::VectorXd> vertices;
  MatroidPtr matroid;
};

using Constraint =
    std::variant<MatroidPtr, KnapsackConstraint, std::vector<MatroidPtr>,
                 DistributionallyRobustConstraint>;

/// One robust max-min problem: ground set, k objectives sharing it, a
/// constraint object, and the accuracy parameter epsilon in (0,1).
struct RobustInstance {
  GroundSet ground;
  std::vector<OraclePtr> objectives;
  Constraint constraint;
  double epsilon = 0.0;

  void validate() const {
    if (objectives.empty()) throw std::invalid_argument("instance needs k >= 1 objectives");
    for (const auto& f : objectives) {
      if (!f || f->n() != ground.n) {
        throw std::invalid_argument("objectives must share the instance ground set");
      }
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw std::invalid_argument("epsilon must lie in (0,1)");
    }
  }
};

}  // namespace robsub

#endif  // ROBSUB_CONSTRAINTS_HPP_
