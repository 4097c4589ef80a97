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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "robsub/continuous.hpp"
#include "robsub/rounding.hpp"
#include "test_util.hpp"

using namespace robsub;

TEST_CASE("interval decomposition") {
  SUBCASE("uniform base b=1, two folds, the quarter-half point") {
    auto base = std::make_shared<UniformMatroid>(GroundSet(4), 1);
    UnionMatroid u(base, 2);
    FractionalPoint y(Eigen::VectorXd::Constant(4, 0.5));
    auto d = decompose(y, u);
    validate_decomposition(d, u);
    REQUIRE(d.atoms.size() == 2);
    CHECK(d.atoms[0].first == doctest::Approx(0.5));
    CHECK(d.atoms[1].first == doctest::Approx(0.5));
    for (const auto& [w, atom] : d.atoms) {
      CHECK(atom.size() == 2);
      auto membership = union_is_independent(u, atom);
      CHECK(membership.independent);
      CHECK(membership.witness.size() == 2);  // two singletons
    }
  }
  SUBCASE("indicator of an independent set is a single atom") {
    auto rng = testing::make_rng(501);
    auto base = testing::random_partition_matroid(6, 2, 1, rng);
    UnionMatroid u(base, 2);
    auto s = ElementSet::of(6, {0, 1});
    if (u.is_independent(s)) {
      auto d = decompose(FractionalPoint::indicator(s), u);
      validate_decomposition(d, u);
      REQUIRE(d.atoms.size() == 1);
      CHECK(d.atoms[0].second == s);
      CHECK(d.atoms[0].first == doctest::Approx(1.0));
    }
  }
  SUBCASE("atom count stays within n + 1 and recomposition is exact") {
    auto rng = testing::make_rng(503);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 8;
      auto base = testing::random_partition_matroid(n, 2, 1, rng);
      UnionMatroid u(base, 3);
      auto ps = u.partition_structure();
      Eigen::VectorXd y(n);
      for (int e = 0; e < n; ++e) y[e] = unit(rng);
      // Scale into the polytope part by part.
      for (std::size_t j = 0; j < ps->parts.size(); ++j) {
        double total = 0.0;
        for (int e : ps->parts[j]) total += y[e];
        if (total > ps->budgets[j]) {
          for (int e : ps->parts[j]) y[e] *= 0.95 * ps->budgets[j] / total;
        }
      }
      auto d = decompose(FractionalPoint(y), u);
      validate_decomposition(d, u);
      CHECK(d.atoms.size() <= static_cast<std::size_t>(n + 1));
    }
  }
  SUBCASE("membership violations carry the violated inequality") {
    auto base = std::make_shared<UniformMatroid>(GroundSet(3), 1);
    UnionMatroid u(base, 1);
    Eigen::VectorXd y(3);
    y << 0.8, 0.8, 0.0;
    try {
      decompose(FractionalPoint(y), u);
      FAIL("expected a membership rejection");
    } catch (const PolytopeMembershipError& e) {
      CHECK(e.y_of_s > e.rank_bound);
    }
  }
}

TEST_CASE("generic decomposition through the feasibility program") {
  auto rng = testing::make_rng(509);
  auto family = testing::random_linear_matroid_family(5, 2, rng);
  auto base = std::make_shared<ExplicitMatroid>(GroundSet(5), family);
  UnionMatroid u(base, 2);
  // Mix a few independent sets of the union matroid and decompose the point.
  std::vector<ElementSet> picks;
  for (std::uint64_t mask = 0; mask < 32 && picks.size() < 3; ++mask) {
    auto s = ElementSet::from_mask(5, mask);
    if (s.size() >= 2 && u.is_independent(s)) picks.push_back(s);
  }
  REQUIRE(picks.size() == 3);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(5);
  std::vector<double> weights = {0.5, 0.3, 0.2};
  for (int i = 0; i < 3; ++i) {
    picks[i].for_each([&](int e) { y[e] += weights[i]; });
  }
  auto d = decompose(FractionalPoint(y), u);
  validate_decomposition(d, u);

  auto s = swap_round(d, u, 999);
  CHECK(union_is_independent(u, s).independent);
}

TEST_CASE("swap rounding") {
  SUBCASE("single atom comes back unchanged") {
    auto base = std::make_shared<UniformMatroid>(GroundSet(4), 2);
    UnionMatroid u(base, 1);
    ConvexDecomposition d;
    d.point = Eigen::VectorXd::Zero(4);
    d.point[1] = d.point[3] = 1.0;
    d.atoms.emplace_back(1.0, ElementSet::of(4, {1, 3}));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(swap_round(d, u, seed) == ElementSet::of(4, {1, 3}));
    }
  }
  SUBCASE("two disjoint singletons resolve by the weight coin") {
    auto base = std::make_shared<UniformMatroid>(GroundSet(2), 1);
    UnionMatroid u(base, 1);
    ConvexDecomposition d;
    d.point = Eigen::VectorXd::Constant(2, 0.5);
    d.atoms.emplace_back(0.5, ElementSet::of(2, {0}));
    d.atoms.emplace_back(0.5, ElementSet::of(2, {1}));
    int first = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      auto s = swap_round(d, u, static_cast<std::uint64_t>(t));
      REQUIRE(s.size() == 1);
      if (s.contains(0)) ++first;
    }
    // 3 sigma around p = 1/2.
    double sigma = std::sqrt(0.25 * trials);
    CHECK(std::abs(first - trials / 2.0) <= 3 * sigma);
  }
  SUBCASE("marginals preserved on a partition fixture") {
    auto rng = testing::make_rng(521);
    auto base = testing::random_partition_matroid(6, 2, 1, rng);
    UnionMatroid u(base, 2);
    Eigen::VectorXd y(6);
    y << 0.7, 0.4, 0.3, 0.55, 0.25, 0.6;
    // Clip into the polytope.
    auto ps = u.partition_structure();
    for (std::size_t j = 0; j < ps->parts.size(); ++j) {
      double total = 0.0;
      for (int e : ps->parts[j]) total += y[e];
      if (total > ps->budgets[j]) {
        for (int e : ps->parts[j]) y[e] *= ps->budgets[j] / total * 0.98;
      }
    }
    auto d = decompose(FractionalPoint(y), u);
    validate_decomposition(d, u);
    const int trials = 10000;
    Eigen::VectorXd hits = Eigen::VectorXd::Zero(6);
    for (int t = 0; t < trials; ++t) {
      auto s = swap_round(d, u, 100000 + static_cast<std::uint64_t>(t));
      CHECK(u.is_independent(s));
      s.for_each([&](int e) { hits[e] += 1.0; });
    }
    for (int e = 0; e < 6; ++e) {
      double sigma = std::sqrt(std::max(1e-12, y[e] * (1 - y[e]) * trials));
      CHECK(std::abs(hits[e] - y[e] * trials) <= 3 * sigma + 1.0);
    }
  }
  SUBCASE("expected value dominates the multilinear value") {
    auto rng = testing::make_rng(523);
    auto f = testing::random_coverage(6, 9, 0.5, rng);
    MultilinearTable table(*f);
    auto base = testing::random_partition_matroid(6, 2, 1, rng);
    UnionMatroid u(base, 2);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(6, 0.4);
    auto d = decompose(FractionalPoint(y), u);
    const double reference = table.value(y);
    const int trials = 20000;
    double mean = 0.0, ss = 0.0;
    for (int t = 0; t < trials; ++t) {
      double v = f->eval(swap_round(d, u, 7000000 + static_cast<std::uint64_t>(t)));
      mean += v;
      ss += v * v;
    }
    mean /= trials;
    double std_error = std::sqrt((ss / trials - mean * mean) / trials);
    CHECK(mean >= reference - 3 * std_error);
  }
  SUBCASE("deterministic for a fixed seed") {
    auto rng = testing::make_rng(527);
    auto base = testing::random_partition_matroid(6, 3, 1, rng);
    UnionMatroid u(base, 2);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(6, 0.45);
    auto d = decompose(FractionalPoint(y), u);
    CHECK(swap_round(d, u, 31337) == swap_round(d, u, 31337));
  }
}

TEST_CASE("trace-based decomposition feeds the rounder") {
  auto rng = testing::make_rng(531);
  std::vector<OraclePtr> fs = {testing::random_coverage(6, 8, 0.5, rng)};
  MatroidPtr m = testing::random_partition_matroid(6, 2, 1, rng);
  const double gamma = brute_force_opt(fs, Constraint{m}).opt;
  ContinuousConfig cfg;
  cfg.delta = 0.05;
  auto trace = continuous_greedy_run(fs, gamma, 0.5, *m, cfg);
  REQUIRE(!trace.gamma_too_large);
  UnionMatroid u(m, trace.ell);
  auto d = decomposition_from_trace(trace, u);
  // Recomposition against the trace endpoint, within 1e-9.
  Eigen::VectorXd recomposed = Eigen::VectorXd::Zero(6);
  double total = 0.0;
  for (const auto& [w, atom] : d.atoms) {
    CHECK(u.is_independent(atom));
    atom.for_each([&](int e) { recomposed[e] += w; });
    total += w;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK((recomposed - trace.points.back()).cwiseAbs().maxCoeff() <= 1e-9);
  auto s = swap_round(d, u, 5);
  CHECK(union_is_independent(u, s).independent);
}

TEST_CASE("round and certify") {
  auto rng = testing::make_rng(541);
  SUBCASE("constant objectives above gamma always accept") {
    auto base = testing::random_partition_matroid(4, 2, 1, rng);
    UnionMatroid u(base, 2);
    auto constant = std::make_shared<FunctionOracle>(GroundSet(4),
                                                     [](const ElementSet&) { return 0.9; });
    Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 0.3);
    auto result = round_and_certify(FractionalPoint(y), u, {constant}, 0.9, 0.25, 3);
    CHECK(result.accepted);
    CHECK(result.witness.size() <= 2);
  }
  SUBCASE("below-threshold draws are reports, not errors") {
    auto base = testing::random_partition_matroid(4, 2, 1, rng);
    UnionMatroid u(base, 1);
    auto zero = std::make_shared<FunctionOracle>(GroundSet(4),
                                                 [](const ElementSet&) { return 0.0; });
    Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 0.2);
    auto result = round_and_certify(FractionalPoint(y), u, {zero}, 0.5, 0.25, 3);
    CHECK(!result.accepted);
  }
  SUBCASE("acceptance frequency under the paper parameterization") {
    // F_i^gamma(y) >= (1 - (eps/k) c) gamma with c = 1/2 makes each draw fail
    // with probability at most c/k per objective; the union bound leaves
    // acceptance probability at least 1 - c. Empirically, with some margin:
    auto rng2 = testing::make_rng(547);
    std::vector<OraclePtr> fs = {testing::random_coverage(8, 10, 0.5, rng2),
                                 testing::random_coverage(8, 10, 0.5, rng2)};
    auto m = std::static_pointer_cast<const Matroid>(std::make_shared<PartitionMatroid>(
        GroundSet(8), std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}},
        std::vector<int>{1, 1}));
    const double eps = 0.25, c = 0.5;
    const double gamma = brute_force_opt(fs, Constraint{m}).opt;
    ContinuousConfig cfg;
    cfg.delta = 0.01;
    cfg.c = c;
    auto trace = continuous_greedy_run(fs, gamma, eps, *m, cfg);
    REQUIRE(!trace.gamma_too_large);
    UnionMatroid u(m, trace.ell);
    std::vector<OraclePtr> truncated;
    for (const auto& f : fs) truncated.push_back(std::make_shared<TruncatedOracle>(f, gamma));
    int accepted = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      auto result = round_and_certify(FractionalPoint(trace.points.back()), u, truncated, gamma,
                                      eps, 900 + static_cast<std::uint64_t>(s));
      if (result.accepted) {
        ++accepted;
        CHECK(static_cast<int>(result.witness.size()) <= trace.ell);
      }
    }
    CHECK(accepted >= static_cast<int>((1.0 - c - 0.1) * seeds));
  }
}
