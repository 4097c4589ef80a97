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

#include "robsub/fpl.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace robsub {

FplInstance::FplInstance(int dim, double eta, std::uint64_t seed)
    : eta_(eta), q_(Eigen::VectorXd::Zero(dim)), cumulative_(Eigen::VectorXd::Zero(dim)) {
  if (dim < 1) throw std::invalid_argument("FPL needs dimension >= 1");
  if (!(eta > 0.0)) throw std::invalid_argument("FPL needs eta > 0");
  if (std::isfinite(eta)) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0 / eta);
    for (int e = 0; e < dim; ++e) q_[e] = unit(rng);
  }
}

void FplInstance::accumulate(const Eigen::VectorXd& reward) {
  if (reward.size() != cumulative_.size()) throw std::invalid_argument("reward size mismatch");
  cumulative_ += reward;
}

Eigen::VectorXd fpl_step(const FplInstance& inst, const LinearMaximizer& argmax) {
  return argmax(inst.perturbed_cumulative());
}

}  // namespace robsub
