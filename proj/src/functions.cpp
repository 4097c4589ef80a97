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

#include "robsub/functions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace robsub {

namespace {

void check_objectives(const std::vector<OraclePtr>& objectives) {
  if (objectives.empty()) throw std::invalid_argument("need at least one objective");
  int n = objectives.front()->n();
  for (const auto& f : objectives) {
    if (!f) throw std::invalid_argument("null objective");
    if (f->n() != n) throw std::invalid_argument("objectives disagree on ground set size");
  }
}

}  // namespace

ModularFunction::ModularFunction(GroundSet ground, Eigen::VectorXd weights)
    : SubmodularOracle(std::move(ground)), weights_(std::move(weights)) {
  if (weights_.size() != n()) throw std::invalid_argument("weight count must equal n");
  if ((weights_.array() < 0).any()) {
    throw std::invalid_argument("modular weights must be nonnegative");
  }
}

double ModularFunction::value(const ElementSet& s) const {
  double total = 0.0;
  s.for_each([&](int e) { total += weights_[e]; });
  return total;
}

CoverageFunction::CoverageFunction(GroundSet ground, std::vector<std::vector<int>> covers,
                                   Eigen::VectorXd universe_weights)
    : SubmodularOracle(std::move(ground)), universe_weights_(std::move(universe_weights)) {
  if (static_cast<int>(covers.size()) != n()) {
    throw std::invalid_argument("coverage: one item list per element required");
  }
  if ((universe_weights_.array() < 0).any()) {
    throw std::invalid_argument("coverage: universe weights must be nonnegative");
  }
  int m = universe_size();
  words_ = (m + 63) / 64;
  cover_bits_.assign(covers.size(), std::vector<std::uint64_t>(words_, 0));
  for (std::size_t e = 0; e < covers.size(); ++e) {
    for (int u : covers[e]) {
      if (u < 0 || u >= m) throw std::invalid_argument("coverage: item index out of range");
      cover_bits_[e][u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }
}

double CoverageFunction::value(const ElementSet& s) const {
  std::vector<std::uint64_t> covered(words_, 0);
  s.for_each([&](int e) {
    const auto& row = cover_bits_[e];
    for (int w = 0; w < words_; ++w) covered[w] |= row[w];
  });
  double total = 0.0;
  for (int w = 0; w < words_; ++w) {
    for (std::uint64_t m = covered[w]; m != 0; m &= m - 1) {
      total += universe_weights_[w * 64 + std::countr_zero(m)];
    }
  }
  return total;
}

FacilityLocationFunction::FacilityLocationFunction(GroundSet ground, Eigen::MatrixXd ratings,
                                                   double r_max)
    : SubmodularOracle(std::move(ground)), ratings_(std::move(ratings)), r_max_(r_max) {
  if (ratings_.cols() != n()) throw std::invalid_argument("ratings need one column per element");
  if (ratings_.rows() < 1) throw std::invalid_argument("ratings need at least one user");
  if (r_max_ <= 0) throw std::invalid_argument("r_max must be positive");
  if (ratings_.minCoeff() < 0 || ratings_.maxCoeff() > r_max_) {
    throw std::invalid_argument("ratings must lie in [0, r_max]");
  }
}

double FacilityLocationFunction::value(const ElementSet& s) const {
  if (s.empty()) return 0.0;
  const Eigen::Index users = ratings_.rows();
  double total = 0.0;
  std::vector<int> elems = s.indices();
  for (Eigen::Index u = 0; u < users; ++u) {
    double best = 0.0;
    for (int e : elems) best = std::max(best, ratings_(u, e));
    total += best;
  }
  return total / (r_max_ * static_cast<double>(users));
}

TruncatedOracle::TruncatedOracle(OraclePtr inner, double gamma)
    : SubmodularOracle(inner ? inner->ground() : GroundSet{}),
      inner_(std::move(inner)),
      gamma_(gamma) {
  if (!inner_) throw std::invalid_argument("truncation needs an inner oracle");
  if (gamma_ <= 0) throw std::invalid_argument("truncation level gamma must be positive");
}

double TruncatedOracle::value(const ElementSet& s) const {
  return std::min(inner_->eval(s), gamma_);
}

RobustAverageOracle::RobustAverageOracle(std::vector<OraclePtr> objectives, double gamma)
    : SubmodularOracle(objectives.empty() ? GroundSet{} : objectives.front()->ground()),
      objectives_(std::move(objectives)),
      gamma_(gamma) {
  check_objectives(objectives_);
  if (gamma_ <= 0) throw std::invalid_argument("gamma must be positive");
}

double RobustAverageOracle::value(const ElementSet& s) const {
  double total = 0.0;
  for (const auto& f : objectives_) total += std::min(f->eval(s), gamma_);
  return total / static_cast<double>(objectives_.size());
}

MixtureOracle::MixtureOracle(Eigen::VectorXd q, std::vector<OraclePtr> objectives)
    : SubmodularOracle(objectives.empty() ? GroundSet{} : objectives.front()->ground()),
      q_(std::move(q)),
      objectives_(std::move(objectives)) {
  check_objectives(objectives_);
  if (q_.size() != static_cast<Eigen::Index>(objectives_.size())) {
    throw std::invalid_argument("mixture weight count must equal objective count");
  }
  if ((q_.array() < 0).any()) throw std::invalid_argument("mixture weights must be nonnegative");
  if (std::abs(q_.sum() - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
}

double MixtureOracle::value(const ElementSet& s) const {
  double total = 0.0;
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    if (q_[static_cast<Eigen::Index>(i)] > 0) {
      total += q_[static_cast<Eigen::Index>(i)] * objectives_[i]->eval(s);
    }
  }
  return total;
}

PerturbedOracle::PerturbedOracle(OraclePtr base, ElementSet lambda, Eigen::VectorXd xi,
                                 double scale)
    : SubmodularOracle(base ? base->ground() : GroundSet{}),
      base_(std::move(base)),
      lambda_(std::move(lambda)),
      xi_(std::move(xi)),
      scale_(scale) {
  if (!base_) throw std::invalid_argument("perturbed oracle needs a base");
  if (lambda_.ground_size() != n() || xi_.size() != n()) {
    throw std::invalid_argument("perturbation data must match the ground set");
  }
  if (scale_ < 0) throw std::invalid_argument("noise scale must be nonnegative");
}

double PerturbedOracle::value(const ElementSet& s) const {
  double noise = 0.0;
  lambda_.for_each([&](int e) {
    if (s.contains(e)) noise += xi_[e];
  });
  return base_->eval(s) + scale_ * noise;
}

PerturbedFamily make_perturbed_family(const OraclePtr& base, const PerturbedFamilySpec& spec) {
  if (!base) throw std::invalid_argument("perturbed family needs a base oracle");
  const int n = base->n();
  if (spec.k < 1) throw std::invalid_argument("perturbed family needs k >= 1");
  if (spec.lambda_size < 0 || spec.lambda_size > n) {
    throw std::invalid_argument("lambda_size must lie in [0, n]");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PerturbedFamily family;
  family.scale = spec.noise_scale < 0 ? 1.0 / static_cast<double>(n) : spec.noise_scale;
  family.xi.resize(n);
  for (int e = 0; e < n; ++e) family.xi[e] = unit(rng);

  std::vector<int> pool(n);
  for (int e = 0; e < n; ++e) pool[e] = e;
  for (int i = 0; i < spec.k; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    ElementSet lambda(n);
    for (int j = 0; j < spec.lambda_size; ++j) lambda.insert(pool[j]);
    family.lambdas.push_back(lambda);
    family.members.push_back(
        std::make_shared<PerturbedOracle>(base, lambda, family.xi, family.scale));
  }
  return family;
}

OraclePtr build_robust_average(const std::vector<OraclePtr>& objectives, double gamma) {
  return std::make_shared<RobustAverageOracle>(objectives, gamma);
}

OraclePtr mix(const Eigen::VectorXd& q, const std::vector<OraclePtr>& objectives) {
  return std::make_shared<MixtureOracle>(q, objectives);
}

}  // namespace robsub
