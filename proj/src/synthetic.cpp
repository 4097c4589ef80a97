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

#include "robsub/synthetic.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace robsub {

Eigen::MatrixXd generate_synthetic_ratings(const SyntheticRatingsConfig& cfg,
                                           std::uint64_t seed) {
  if (cfg.n < 1 || cfg.num_users < 1) throw std::invalid_argument("need n >= 1 and users >= 1");
  if (cfg.sparsity < 0.0 || cfg.sparsity > 1.0) {
    throw std::invalid_argument("sparsity must lie in [0,1]");
  }
  if (cfg.genres < 1 || cfg.favorites_per_user < 0) {
    throw std::invalid_argument("invalid genre configuration");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> genre_of(0, cfg.genres - 1);

  std::vector<int> movie_genre(cfg.n);
  for (int e = 0; e < cfg.n; ++e) movie_genre[e] = genre_of(rng);

  std::vector<std::vector<bool>> favorite(cfg.num_users, std::vector<bool>(cfg.genres, false));
  for (int u = 0; u < cfg.num_users; ++u) {
    for (int j = 0; j < cfg.favorites_per_user; ++j) favorite[u][genre_of(rng)] = true;
  }

  Eigen::MatrixXd ratings = Eigen::MatrixXd::Zero(cfg.num_users, cfg.n);
  std::uniform_int_distribution<int> high(3, 5);
  std::uniform_int_distribution<int> low(1, 3);
  for (int u = 0; u < cfg.num_users; ++u) {
    for (int e = 0; e < cfg.n; ++e) {
      if (unit(rng) >= cfg.sparsity) continue;  // unrated cell
      ratings(u, e) = favorite[u][movie_genre[e]] ? high(rng) : low(rng);
    }
  }
  return ratings;
}

}  // namespace robsub
