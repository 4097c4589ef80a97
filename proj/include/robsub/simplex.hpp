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

#ifndef ROBSUB_SIMPLEX_HPP_
#define ROBSUB_SIMPLEX_HPP_

#include <Eigen/Dense>

namespace robsub {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase primal simplex for
///     max c.x  s.t.  A x <= b,  x >= 0,
/// with Bland's rule for anti-cycling. Sized for the small direction-finding
/// programs of the continuous greedy (tens of rows/columns).
LpResult solve_lp_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                      const Eigen::VectorXd& b);

}  // namespace robsub

#endif  // ROBSUB_SIMPLEX_HPP_
