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

#ifndef ROBSUB_TESTS_TEST_UTIL_HPP_
#define ROBSUB_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <bit>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "robsub/functions.hpp"
#include "robsub/matroid.hpp"
#include "robsub/oracle.hpp"

namespace robsub::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Weighted coverage with values normalized into [0,1] (total universe weight 1).
inline OraclePtr random_coverage(int n, int universe, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<int>> covers(n);
  for (int e = 0; e < n; ++e) {
    for (int u = 0; u < universe; ++u) {
      if (unit(rng) < density) covers[e].push_back(u);
    }
  }
  Eigen::VectorXd weights(universe);
  double total = 0.0;
  for (int u = 0; u < universe; ++u) {
    weights[u] = 0.2 + unit(rng);
    total += weights[u];
  }
  weights /= total;
  return std::make_shared<CoverageFunction>(GroundSet(n), std::move(covers), std::move(weights));
}

inline OraclePtr random_modular(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd weights(n);
  for (int e = 0; e < n; ++e) weights[e] = scale * unit(rng);
  return std::make_shared<ModularFunction>(GroundSet(n), std::move(weights));
}

inline OraclePtr random_facility(int n, int users, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> stars(0, 5);
  Eigen::MatrixXd ratings(users, n);
  for (int u = 0; u < users; ++u) {
    for (int e = 0; e < n; ++e) ratings(u, e) = stars(rng);
  }
  return std::make_shared<FacilityLocationFunction>(GroundSet(n), std::move(ratings));
}

inline MatroidPtr random_partition_matroid(int n, int q, int budget, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> parts(q);
  for (int i = 0; i < n; ++i) parts[i % q].push_back(perm[i]);
  return std::make_shared<PartitionMatroid>(GroundSet(n), parts, std::vector<int>(q, budget));
}

// Binary (GF(2)) linear matroid on random d-bit column labels, materialized as
// an explicit family; gives genuinely non-partition exchange structure.
inline std::vector<ElementSet> random_linear_matroid_family(int n, int dim,
                                                            std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> column(1, (std::uint64_t{1} << dim) - 1);
  std::vector<std::uint64_t> cols(n);
  for (int e = 0; e < n; ++e) cols[e] = column(rng);

  auto independent = [&](std::uint64_t mask) {
    std::uint64_t by_high[64] = {};
    for (int e = 0; e < n; ++e) {
      if (!((mask >> e) & 1u)) continue;
      std::uint64_t v = cols[e];
      while (v != 0) {
        int h = 63 - std::countl_zero(v);
        if (by_high[h] == 0) {
          by_high[h] = v;
          break;
        }
        v ^= by_high[h];
      }
      if (v == 0) return false;
    }
    return true;
  };

  std::vector<ElementSet> family;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (independent(mask)) family.push_back(ElementSet::from_mask(n, mask));
  }
  return family;
}

}  // namespace robsub::testing

#endif  // ROBSUB_TESTS_TEST_UTIL_HPP_
