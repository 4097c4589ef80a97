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

#ifndef ROBSUB_CONTINUOUS_HPP_
#define ROBSUB_CONTINUOUS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "robsub/multilinear.hpp"
#include "robsub/offline.hpp"
#include "robsub/rounding.hpp"

namespace robsub {

/// Discretized ascent record: grid times, the point and chosen direction per
/// step, each direction's vertex mixture inside the base polytope (the
/// certificate that y(tau) lies in tau * P(M)), and the truncated multilinear
/// values along the way.
struct AscentTrace {
  double gamma = 0.0;
  double delta = 0.0;
  int ell = 0;
  std::vector<double> grid;                  // tau = 0, delta, ..., ell
  std::vector<Eigen::VectorXd> points;       // y(tau), one per grid entry
  std::vector<Eigen::VectorXd> directions;   // v per step
  std::vector<std::vector<std::pair<double, ElementSet>>> step_vertices;
  Eigen::MatrixXd f_values;                  // k x |grid|
  bool gamma_too_large = false;              // direction LP rejected en route
};

struct DirectionResult {
  bool feasible = false;
  Eigen::VectorXd v;
  double surplus = 0.0;  // max-min slack of condition (a); >= 0 when feasible
};

/// Finds v with (a) v . grad F_i^gamma(y) >= gamma - F_i^gamma(y) for all i,
/// (b) v in P(M), (c) v + y in [0,1]^V, by maximizing the minimum slack of
/// (a) over the explicit part/budget inequalities. Feasible whenever
/// gamma <= OPT; a negative optimum signals "gamma too large". Only matroids
/// with a partition structure are supported on this path.
DirectionResult find_direction(const Eigen::VectorXd& y,
                               const std::vector<MultilinearTable>& truncated, double gamma,
                               const Matroid& m);

struct ContinuousConfig {
  double delta = 0.01;       // step size; must divide ell evenly
  double c = 0.5;            // rounding failure budget; ell = ceil(ln(k/eps) + ln(1/c))
  int rounding_repeats = 20; // success amplification
  std::uint64_t seed = 0;
};

/// Discretized continuous greedy on the truncated objectives up to time
/// ell = ceil(ln(k/eps) + ln(1/c)): y(tau) = y(tau - delta) + delta * v.
/// Grid inequality F_i^gamma(y(tau)) >= (1 - e^-tau) gamma - 2 tau delta gamma
/// is the caller-checkable certificate.
AscentTrace continuous_greedy_run(const std::vector<OraclePtr>& objectives, double gamma,
                                  double epsilon, const Matroid& m,
                                  const ContinuousConfig& cfg = {});

// M_ell convex decomposition of the trace endpoint. The stored step vertices
// are validated as the tau * P(M) certificates; the atoms themselves come
// from the exact part/budget interval decomposition of y(ell).
ConvexDecomposition decomposition_from_trace(const AscentTrace& trace, const UnionMatroid& u);

struct DecisionResult {
  bool accepted = false;
  ElementSet set;
  std::vector<ElementSet> witness;
  int draws_used = 0;
  AscentTrace trace;
};

/// Lemma-style decision procedure: truncate at gamma, ascend, swap-round up to
/// rounding_repeats times, accept the first draw with f_i(S) >= (1-eps) gamma
/// for all i. Returns rejected when gamma is detected too large or every draw
/// falls short.
DecisionResult decision_solve(const std::vector<OraclePtr>& objectives, double gamma,
                              double epsilon, const MatroidPtr& m,
                              const ContinuousConfig& cfg = {});

/// Sweeps the gamma grid with the decision procedure (binary search over the
/// candidate ladder, decision loss eps/2) and returns the best accepted set;
/// falls back to the extended-greedy path, flagged, if every candidate is
/// rejected.
BiCriteriaSolution robust_continuous_solve(const RobustInstance& instance,
                                           const ContinuousConfig& cfg = {});

// ceil(ln(k/eps) + ln(1/c)) with float-drift guard.
int continuous_layer_count(int k, double epsilon, double c = 0.5);

}  // namespace robsub

#endif  // ROBSUB_CONTINUOUS_HPP_
