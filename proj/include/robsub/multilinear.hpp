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

#ifndef ROBSUB_MULTILINEAR_HPP_
#define ROBSUB_MULTILINEAR_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "robsub/oracle.hpp"

namespace robsub {

/// A point y in [0,1]^V. Coordinates within 1e-12 of the box are clamped
/// (arithmetic drift); anything further out is rejected.
class FractionalPoint {
 public:
  explicit FractionalPoint(Eigen::VectorXd y);
  static FractionalPoint zero(int n) { return FractionalPoint(Eigen::VectorXd::Zero(n)); }
  static FractionalPoint indicator(const ElementSet& s);

  const Eigen::VectorXd& coords() const { return y_; }
  int n() const { return static_cast<int>(y_.size()); }
  double operator[](int e) const { return y_[e]; }

 private:
  Eigen::VectorXd y_;
};

struct EstimatorConfig {
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  bool antithetic = false;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// F(y) = sum_S f(S) prod_{e in S} y_e prod_{e not in S} (1 - y_e), summed
/// with compensated (Kahan) accumulation. Exhaustive; refuses n > 20.
double multilinear_exact(const SubmodularOracle& f, const FractionalPoint& y);

/// Unbiased Monte-Carlo estimate of F(y): S ~ y with independent inclusions.
/// Sample substreams are derived per-index from the seed, so the result does
/// not depend on evaluation order or worker count.
Estimate multilinear_estimate(const SubmodularOracle& f, const FractionalPoint& y,
                              const EstimatorConfig& cfg);

/// Delta_e F(y) = E_{S~y}[f(S+e) - f(S)], estimated with common random sets
/// (the same S drives both evaluations).
double delta_e(const SubmodularOracle& f, const FractionalPoint& y, int e,
               const EstimatorConfig& cfg);

// Exact counterpart via the subset table; n <= 20.
double delta_e_exact(const SubmodularOracle& f, const FractionalPoint& y, int e);

/// All Delta_e at once from one shared pool of sampled sets (each sample is
/// reused by every coordinate: O(samples * n) oracle calls).
Eigen::VectorXd delta_all_estimate(const SubmodularOracle& f, const FractionalPoint& y,
                                   const EstimatorConfig& cfg);

/// Snapshot of f over all 2^n subsets enabling O(2^n) exact evaluation of F
/// and O(n 2^n) exact gradients. Building the table costs 2^n oracle calls.
class MultilinearTable {
 public:
  explicit MultilinearTable(const SubmodularOracle& f);

  int n() const { return n_; }
  double value(const Eigen::VectorXd& y) const;
  double partial(const Eigen::VectorXd& y, int e) const;    // dF/dy_e
  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const;  // all partials
  Eigen::VectorXd delta(const Eigen::VectorXd& y) const;     // (1-y_e) dF/dy_e

  double value_at(std::uint64_t mask) const { return table_[mask]; }
  double min_value() const;
  double max_value() const;

 private:
  int n_;
  std::vector<double> table_;
};

}  // namespace robsub

#endif  // ROBSUB_MULTILINEAR_HPP_
