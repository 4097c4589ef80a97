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

#include "robsub/softmin.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace robsub {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("softmin needs finite alpha > 0");
  }
}

void check_finite(const Eigen::VectorXd& values) {
  if (values.size() == 0) throw std::invalid_argument("softmin needs at least one value");
  if (!values.allFinite()) throw std::invalid_argument("softmin values must be finite");
}

}  // namespace

double softmin_value(const Eigen::VectorXd& values, double alpha) {
  check_alpha(alpha);
  check_finite(values);
  const double g_min = values.minCoeff();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    sum += std::exp(-alpha * (values[i] - g_min));
  }
  return g_min - std::log(sum) / alpha;
}

Eigen::VectorXd softmin_weights(const Eigen::VectorXd& values, double alpha) {
  check_alpha(alpha);
  check_finite(values);
  const double g_min = values.minCoeff();
  Eigen::VectorXd p(values.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    p[i] = std::exp(-alpha * (values[i] - g_min));
    sum += p[i];
  }
  return p / sum;
}

Eigen::VectorXd softmin_gradient(const Eigen::MatrixXd& gradients, const Eigen::VectorXd& p) {
  if (gradients.rows() != p.size()) {
    throw std::invalid_argument("softmin gradient: one weight per gradient row required");
  }
  return gradients.transpose() * p;
}

Eigen::VectorXd delta_H_exact(const Eigen::VectorXd& y,
                              const std::vector<const MultilinearTable*>& tables, double alpha) {
  if (tables.empty()) throw std::invalid_argument("delta_H needs objectives");
  const auto k = static_cast<Eigen::Index>(tables.size());
  Eigen::VectorXd values(k);
  for (Eigen::Index i = 0; i < k; ++i) values[i] = tables[i]->value(y);
  Eigen::VectorXd p = softmin_weights(values, alpha);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(y.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    if (p[i] > 0.0) out += p[i] * tables[i]->delta(y);
  }
  return out;
}

Eigen::VectorXd delta_H_exact(const Eigen::VectorXd& y,
                              const std::vector<MultilinearTable>& tables, double alpha) {
  std::vector<const MultilinearTable*> ptrs;
  ptrs.reserve(tables.size());
  for (const auto& t : tables) ptrs.push_back(&t);
  return delta_H_exact(y, ptrs, alpha);
}

Eigen::VectorXd delta_H_estimate(const Eigen::VectorXd& y,
                                 const std::vector<OraclePtr>& objectives, double alpha,
                                 const EstimatorConfig& cfg) {
  if (objectives.empty()) throw std::invalid_argument("delta_H needs objectives");
  if (cfg.samples < 1) throw std::invalid_argument("estimator needs samples >= 1");
  const int n = static_cast<int>(y.size());
  const auto k = static_cast<Eigen::Index>(objectives.size());

  // One pool of sampled sets shared by every objective: the soft-min weights
  // and the Delta estimates then agree on the randomness they saw.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd mean_values = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd mean_delta = Eigen::MatrixXd::Zero(k, n);

  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    ElementSet set(n);
    for (int e = 0; e < n; ++e) {
      if (unit(rng) < y[e]) set.insert(e);
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      double base = objectives[i]->eval(set);
      mean_values[i] += base;
      for (int e = 0; e < n; ++e) {
        if (!set.contains(e)) mean_delta(i, e) += objectives[i]->eval(set.with(e)) - base;
      }
    }
  }
  mean_values /= static_cast<double>(cfg.samples);
  mean_delta /= static_cast<double>(cfg.samples);

  Eigen::VectorXd p = softmin_weights(mean_values, alpha);
  return mean_delta.transpose() * p;
}

}  // namespace robsub
