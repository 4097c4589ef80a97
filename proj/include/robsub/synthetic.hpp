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

#ifndef ROBSUB_SYNTHETIC_HPP_
#define ROBSUB_SYNTHETIC_HPP_

#include <Eigen/Dense>
#include <cstdint>

namespace robsub {

struct SyntheticRatingsConfig {
  int n = 0;          // movies
  int num_users = 0;
  double sparsity = 0.1;  // P[a user rates a movie]
  int genres = 8;
  int favorites_per_user = 2;
};

/// Latent-genre ratings generator standing in for a real ratings dataset.
/// Each movie gets one genre; each user samples a small favorite-genre set;
/// a cell is rated with probability `sparsity` and, when rated, gets values
/// skewed high for favorite genres and low otherwise. Values in {0,...,5};
/// deterministic given the seed.
Eigen::MatrixXd generate_synthetic_ratings(const SyntheticRatingsConfig& cfg,
                                           std::uint64_t seed);

}  // namespace robsub

#endif  // ROBSUB_SYNTHETIC_HPP_
