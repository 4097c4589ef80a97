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

#ifndef ROBSUB_ROUNDING_HPP_
#define ROBSUB_ROUNDING_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "robsub/multilinear.hpp"
#include "robsub/union_matroid.hpp"

namespace robsub {

/// y = sum_j lambda_j 1_{I_j} with lambda > 0 summing to one and every I_j
/// independent in the target matroid; the witness that y lies in its polytope.
struct ConvexDecomposition {
  std::vector<std::pair<double, ElementSet>> atoms;
  Eigen::VectorXd point;
};

// Raised when the queried point is outside the polytope; carries the violated
// rank inequality y(S) <= |S \ A| + ell * rank(A).
class PolytopeMembershipError : public std::runtime_error {
 public:
  PolytopeMembershipError(const std::string& message, ElementSet s, ElementSet a, double lhs,
                          double rhs)
      : std::runtime_error(message), set(std::move(s)), subset(std::move(a)), y_of_s(lhs),
        rank_bound(rhs) {}
  ElementSet set;
  ElementSet subset;
  double y_of_s;
  double rank_bound;
};

/// Decomposes a point of a partition-structured polytope (parts with budgets)
/// by interval alignment: lay each element's mass as an interval along its
/// part and read off the sets hit by unit-spaced probes. At most n+1 atoms
/// after merging; exact up to float addition.
std::vector<std::pair<double, ElementSet>> interval_decompose(const Eigen::VectorXd& x,
                                                              const PartitionStructure& ps);

/// Decomposition of y in P(M_ell). Partition-structured bases use interval
/// alignment directly; general bases (n <= 12) solve the exact feasibility LP
/// over the enumerated independent sets. Membership failures raise
/// PolytopeMembershipError with the violated inequality.
ConvexDecomposition decompose(const FractionalPoint& y, const UnionMatroid& u);

// Checks sum lambda = 1, atom independence and recomposition, all at 1e-9.
void validate_decomposition(const ConvexDecomposition& d, const UnionMatroid& u);

/// Randomized swap rounding: repeatedly merge the two leading atoms by
/// elementary exchanges, keeping each contested element with probability
/// proportional to its atom's weight. Returns one independent set of M_ell
/// with P[e in S] = y_e and E[f(S)] >= F(y) for monotone submodular f.
ElementSet swap_round(const ConvexDecomposition& d, const UnionMatroid& u, std::uint64_t seed);

struct RoundCertifyResult {
  bool accepted = false;
  ElementSet set;
  std::vector<ElementSet> witness;     // <= ell base-independent layers
  Eigen::VectorXd truncated_values;    // f_i^gamma(S)
};

/// One swap-rounding draw, accepted iff every truncated objective reaches
/// (1 - epsilon) * gamma on it. Below-threshold draws are reports, not errors.
RoundCertifyResult round_and_certify(const FractionalPoint& y, const UnionMatroid& u,
                                     const std::vector<OraclePtr>& truncated_objectives,
                                     double gamma, double epsilon, std::uint64_t seed);

}  // namespace robsub

#endif  // ROBSUB_ROUNDING_HPP_
