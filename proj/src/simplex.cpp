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

#include "robsub/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace robsub {

namespace {

constexpr double kEps = 1e-9;

// Tableau with a bottom reduced-cost row. Entering column restricted to
// [0, enter_limit) so phase 2 can lock out the artificials.
struct Tableau {
  int rows = 0;
  int cols = 0;
  Eigen::MatrixXd t;       // (rows + 1) x (cols + 1); last column is the rhs
  std::vector<int> basis;  // basic variable per row

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= rows; ++r) {
      if (r == row) continue;
      double factor = t(r, col);
      if (factor != 0.0) t.row(r) -= factor * t.row(row);
    }
    basis[row] = col;
  }

  // Bland's rule throughout: lowest-index entering column with positive
  // reduced cost, lowest-index basic variable among tight ratio rows.
  // Returns false on unboundedness.
  bool iterate(int enter_limit) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < enter_limit; ++c) {
        if (t(rows, c) > kEps) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows; ++r) {
        if (t(r, enter) > kEps) {
          double ratio = t(r, cols) / t(r, enter);
          if (leave < 0 || ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && basis[r] < basis[leave])) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  // Installs the reduced-cost row for objective coefficients c over the
  // current basis (zero reduced cost on basic columns).
  void set_objective(const Eigen::VectorXd& c) {
    t.row(rows).setZero();
    t.block(rows, 0, 1, c.size()) = c.transpose();
    for (int r = 0; r < rows; ++r) {
      double coeff = t(rows, basis[r]);
      if (coeff != 0.0) t.row(rows) -= coeff * t.row(r);
    }
  }

  double basic_objective(const Eigen::VectorXd& c) const {
    double total = 0.0;
    for (int r = 0; r < rows; ++r) {
      if (basis[r] < c.size()) total += c[basis[r]] * t(r, cols);
    }
    return total;
  }
};

}  // namespace

LpResult solve_lp_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                      const Eigen::VectorXd& b) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(a.rows());
  if (a.cols() != n || b.size() != m) throw std::invalid_argument("LP dimension mismatch");

  // Count artificials: one per negated (b < 0) row.
  int num_artificial = 0;
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0) ++num_artificial;
  }
  const int real_cols = n + m;

  Tableau tab;
  tab.rows = m;
  tab.cols = real_cols + num_artificial;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.cols + 1);
  tab.basis.resize(m);

  int next_artificial = real_cols;
  for (int r = 0; r < m; ++r) {
    tab.t.block(r, 0, 1, n) = a.row(r);
    tab.t(r, n + r) = 1.0;  // slack
    tab.t(r, tab.cols) = b[r];
    if (b[r] < 0) {
      tab.t.row(r) *= -1.0;
      tab.t(r, next_artificial) = 1.0;
      tab.basis[r] = next_artificial++;
    } else {
      tab.basis[r] = n + r;
    }
  }

  if (num_artificial > 0) {
    // Phase 1: maximize -sum(artificials).
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.cols);
    for (int col = real_cols; col < tab.cols; ++col) phase1[col] = -1.0;
    tab.set_objective(phase1);
    if (!tab.iterate(tab.cols)) {
      // -sum(a) is bounded above by 0; reaching here means degeneracy noise.
      return {LpStatus::kInfeasible, Eigen::VectorXd::Zero(n), 0.0};
    }
    if (tab.basic_objective(phase1) < -1e-7) {
      return {LpStatus::kInfeasible, Eigen::VectorXd::Zero(n), 0.0};
    }
    // Pivot any still-basic artificial (value 0) out onto a real column; a
    // fully zero row is redundant and can stay parked on its artificial.
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= real_cols) {
        for (int col = 0; col < real_cols; ++col) {
          if (std::abs(tab.t(r, col)) > kEps) {
            tab.pivot(r, col);
            break;
          }
        }
      }
    }
  }

  Eigen::VectorXd full_c = Eigen::VectorXd::Zero(tab.cols);
  full_c.head(n) = c;
  tab.set_objective(full_c);
  if (!tab.iterate(real_cols)) return {LpStatus::kUnbounded, Eigen::VectorXd::Zero(n), 0.0};

  LpResult result;
  result.status = LpStatus::kOptimal;
  result.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) result.x[tab.basis[r]] = tab.t(r, tab.cols);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace robsub
