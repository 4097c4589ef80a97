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

#ifndef ROBSUB_OFFLINE_HPP_
#define ROBSUB_OFFLINE_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/matroid.hpp"
#include "robsub/oracle.hpp"

namespace robsub {

/// Output of the layered solvers: ell feasible sets whose union carries the
/// bi-criteria guarantee, together with the per-objective values on the union.
struct BiCriteriaSolution {
  std::vector<ElementSet> layers;
  ElementSet union_set;
  Eigen::VectorXd values;  // f_i(union) per objective
  double gamma_used = 0.0;
  int ell = 0;
  std::int64_t oracle_calls = 0;
  double wall_time_ms = 0.0;
  bool fallback = false;  // set when a sweep had to fall back (continuous path)

  // Knapsack runs only.
  std::vector<double> layer_costs;
  double union_cost = 0.0;

  double min_value() const { return values.size() ? values.minCoeff() : 0.0; }
};

struct GreedyOptions {
  // Lazy (priority-queue) evaluation; identical output to the plain scan,
  // far fewer oracle calls on saturating objectives.
  bool lazy = true;
};

/// Alg.: ell rounds, each building a basis of the matroid greedily by the
/// marginal gain on the running union. Guarantee:
///   f(union) >= (1 - 2^-ell) * max_{S in I} f(S)   (for f monotone
/// submodular; a nonzero f(empty) is shifted out internally).
BiCriteriaSolution extended_greedy(const SubmodularOracle& f, const Matroid& m, int ell,
                                   const GreedyOptions& options = {});

// Same loop with feasibility = simultaneous independence in r matroids;
// guarantee (1 - (r/(r+1))^ell) * OPT over the intersection.
BiCriteriaSolution extended_greedy_intersection(const SubmodularOracle& f,
                                                const std::vector<MatroidPtr>& matroids, int ell,
                                                const GreedyOptions& options = {});

/// Bang-per-buck rounds for a knapsack constraint: scan elements by marginal
/// value per unit cost, keep e* only while the layer cost stays within twice
/// the capacity, drop scanned elements, and reset the pool each round.
/// Guarantee: g(union) >= (1 - e^-ell) * max_{S in K} g(S); each layer costs
/// at most 2 * capacity.
BiCriteriaSolution extended_bang_per_buck(const SubmodularOracle& g, const KnapsackConstraint& k,
                                          int ell, const GreedyOptions& options = {});

/// Geometric grid of optimum estimates gamma = n * f_i({e}) * (1-eps/2)^j over
/// all i, e and j = 0..ceil(log_{1-eps/2}(1/n)); some candidate always lands in
/// [(1-eps/2) OPT, OPT]. Sorted descending, exact duplicates removed. If every
/// singleton has value zero the list is the single sentinel {0}.
struct GammaCandidates {
  std::vector<double> values;
  std::size_t raw_count = 0;  // before dedupe; <= n * k * (j_max + 1)
};
GammaCandidates gamma_candidates(const std::vector<OraclePtr>& objectives, double epsilon);

enum class GammaSearch {
  kDescending,    // largest-first, stop at the first certified candidate
  kBinarySearch,  // O(log #candidates) certification runs
};

struct RobustSolveOptions {
  GammaSearch search = GammaSearch::kDescending;
  GreedyOptions greedy;
};

/// Theorem-1 reduction: sweep gamma candidates, run extended greedy on
/// g = (1/k) sum_i min{f_i, gamma} with ell = ceil(log2(2k/eps)), accept gamma
/// iff min_i f_i(union) >= (1 - eps/2) gamma. Guarantees
/// min_i f_i(union) >= (1-eps) OPT.
BiCriteriaSolution robust_offline_solve(const RobustInstance& instance,
                                        const RobustSolveOptions& options = {});

// Corollary variants: knapsack (bang-per-buck rounds, ell = ceil(ln(2k/eps)))
// and r-matroid intersection (ell = ceil(log(2k/eps) / log((r+1)/r))).
BiCriteriaSolution robust_knapsack_solve(const RobustInstance& instance,
                                         const RobustSolveOptions& options = {});
BiCriteriaSolution robust_intersection_solve(const RobustInstance& instance,
                                             const RobustSolveOptions& options = {});

/// f_q = sum q_i f_i per extreme point of Q; the sweep then treats the
/// |Vert(Q)| mixtures as the objective collection.
BiCriteriaSolution distributionally_robust_solve(const std::vector<OraclePtr>& objectives,
                                                 const std::vector<Eigen::VectorXd>& vertices,
                                                 const MatroidPtr& matroid, double epsilon,
                                                 const RobustSolveOptions& options = {});

// Layer-count formulas (ceilings guarded against exact-integer float drift).
int robust_layer_count(int k, double epsilon);                      // ceil(log2(2k/eps))
int knapsack_layer_count(int k, double epsilon);                    // ceil(ln(2k/eps))
int intersection_layer_count(int k, double epsilon, int r);         // see above
int ceil_guarded(double x);

struct BruteForceResult {
  double opt = 0.0;
  ElementSet argmax;
};

/// Exact max over feasible sets of min_i f_i, ties broken by the
/// lexicographically smallest set. Enumerates with downward-closure pruning;
/// refuses n > 20 for matroid(-list) constraints and n > 16 otherwise.
BruteForceResult brute_force_opt(const std::vector<OraclePtr>& objectives,
                                 const Constraint& constraint);

}  // namespace robsub

#endif  // ROBSUB_OFFLINE_HPP_
