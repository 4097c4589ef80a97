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

#ifndef ROBSUB_FUNCTIONS_HPP_
#define ROBSUB_FUNCTIONS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "robsub/oracle.hpp"

namespace robsub {

// f(S) = sum of per-element weights; the basic modular (linear) function.
class ModularFunction final : public SubmodularOracle {
 public:
  ModularFunction(GroundSet ground, Eigen::VectorXd weights);
  const Eigen::VectorXd& weights() const { return weights_; }

 protected:
  double value(const ElementSet& s) const override;

 private:
  Eigen::VectorXd weights_;
};

/// Weighted coverage: element e covers a fixed subset of a universe U with
/// item weights w; f(S) = total weight of the union of covered items.
class CoverageFunction final : public SubmodularOracle {
 public:
  CoverageFunction(GroundSet ground, std::vector<std::vector<int>> covers,
                   Eigen::VectorXd universe_weights);
  int universe_size() const { return static_cast<int>(universe_weights_.size()); }

 protected:
  double value(const ElementSet& s) const override;

 private:
  int words_;
  std::vector<std::vector<std::uint64_t>> cover_bits_;  // per element
  Eigen::VectorXd universe_weights_;
};

/// Facility location over a |U| x n ratings matrix:
///   f(A) = (1 / (r_max * |U|)) * sum_u max_{e in A} ratings(u, e),
/// with f(empty) = 0 and values in [0, 1].
class FacilityLocationFunction final : public SubmodularOracle {
 public:
  FacilityLocationFunction(GroundSet ground, Eigen::MatrixXd ratings, double r_max = 5.0);
  const Eigen::MatrixXd& ratings() const { return ratings_; }
  double r_max() const { return r_max_; }

 protected:
  double value(const ElementSet& s) const override;

 private:
  Eigen::MatrixXd ratings_;  // users x elements
  double r_max_;
};

// min{inner(S), gamma}; keeps monotone submodularity, caps values at gamma.
class TruncatedOracle final : public SubmodularOracle {
 public:
  TruncatedOracle(OraclePtr inner, double gamma);
  double gamma() const { return gamma_; }
  const OraclePtr& inner() const { return inner_; }

 protected:
  double value(const ElementSet& s) const override;

 private:
  OraclePtr inner_;
  double gamma_;
};

// g(S) = (1/k) * sum_i min{f_i(S), gamma}.
class RobustAverageOracle final : public SubmodularOracle {
 public:
  RobustAverageOracle(std::vector<OraclePtr> objectives, double gamma);

 protected:
  double value(const ElementSet& s) const override;

 private:
  std::vector<OraclePtr> objectives_;
  double gamma_;
};

// f_q = q_1 f_1 + ... + q_k f_k for a probability vector q.
class MixtureOracle final : public SubmodularOracle {
 public:
  MixtureOracle(Eigen::VectorXd q, std::vector<OraclePtr> objectives);

 protected:
  double value(const ElementSet& s) const override;

 private:
  Eigen::VectorXd q_;
  std::vector<OraclePtr> objectives_;
};

// One member of a perturbed family: base(A) + scale * sum_{e in A ^ Lambda} xi_e.
class PerturbedOracle final : public SubmodularOracle {
 public:
  PerturbedOracle(OraclePtr base, ElementSet lambda, Eigen::VectorXd xi, double scale);
  const ElementSet& lambda() const { return lambda_; }

 protected:
  double value(const ElementSet& s) const override;

 private:
  OraclePtr base_;
  ElementSet lambda_;
  Eigen::VectorXd xi_;
  double scale_;
};

/// k perturbed copies of a base objective. The noise vector xi ~ U[0,1]^V and
/// the subsets Lambda_i are drawn once from the seed at construction and then
/// frozen, so each member behaves as a deterministic oracle.
struct PerturbedFamily {
  std::vector<OraclePtr> members;
  std::vector<ElementSet> lambdas;
  Eigen::VectorXd xi;
  double scale = 0.0;
};

struct PerturbedFamilySpec {
  int k = 1;
  int lambda_size = 0;
  double noise_scale = -1.0;  // < 0 means the 1/n default
  std::uint64_t seed = 0;
};

PerturbedFamily make_perturbed_family(const OraclePtr& base, const PerturbedFamilySpec& spec);

OraclePtr build_robust_average(const std::vector<OraclePtr>& objectives, double gamma);
OraclePtr mix(const Eigen::VectorXd& q, const std::vector<OraclePtr>& objectives);

}  // namespace robsub

#endif  // ROBSUB_FUNCTIONS_HPP_
