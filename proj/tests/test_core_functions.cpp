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

#include <atomic>
#include <thread>

#include "robsub/checks.hpp"
#include "robsub/functions.hpp"
#include "test_util.hpp"

using namespace robsub;

namespace {

OraclePtr modular(std::vector<double> w) {
  Eigen::VectorXd weights = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
  return std::make_shared<ModularFunction>(GroundSet(static_cast<int>(w.size())), weights);
}

}  // namespace

TEST_CASE("element set basics") {
  ElementSet s(6);
  CHECK(s.empty());
  CHECK(s.insert(3));
  CHECK(!s.insert(3));
  CHECK(s.contains(3));
  CHECK(s.size() == 1);
  CHECK(s.subset_of(ElementSet::of(6, {1, 3, 5})));
  CHECK(ElementSet::of(6, {0, 3}).lex_less(ElementSet::of(6, {1, 2})));
  CHECK(ElementSet::of(6, {0, 1, 2}).lex_less(ElementSet::of(6, {0, 2})));
  CHECK_THROWS_AS(s.insert(6), std::domain_error);

  ElementSet big(200);
  big.insert(150);
  big.insert(7);
  CHECK(big.indices() == std::vector<int>{7, 150});
  CHECK(big.united(ElementSet::of(200, {7, 9})).size() == 3);
  CHECK(big.intersected(ElementSet::of(200, {7, 9})).size() == 1);
}

TEST_CASE("marginal values") {
  auto f = modular({1.0, 2.0, 5.5});
  SUBCASE("modular marginal from the empty set") {
    CHECK(marginal(*f, ElementSet(3), 2) == doctest::Approx(5.5));
  }
  SUBCASE("element already present gives zero") {
    CHECK(marginal(*f, ElementSet::of(3, {2}), 2) == doctest::Approx(0.0));
  }
  SUBCASE("exactly two calls, or one with a cached base value") {
    auto before = f->call_count();
    marginal(*f, ElementSet(3), 1);
    CHECK(f->call_count() - before == 2);
    before = f->call_count();
    marginal(*f, ElementSet(3), 1, 0.0);
    CHECK(f->call_count() - before == 1);
  }
  SUBCASE("out of range element") {
    CHECK_THROWS_AS(marginal(*f, ElementSet(3), 7), std::domain_error);
  }
  SUBCASE("facility location column dominated by the current set") {
    Eigen::MatrixXd ratings(2, 3);
    ratings << 5, 2, 1,  //
        4, 3, 2;
    FacilityLocationFunction fl(GroundSet(3), ratings);
    // Element 0 dominates columns 1 and 2 for every user.
    CHECK(marginal(fl, ElementSet::of(3, {0}), 2) == doctest::Approx(0.0));
  }
}

TEST_CASE("facility location formula and range") {
  Eigen::MatrixXd ratings(2, 2);
  ratings << 5, 0,  //
      1, 3;
  FacilityLocationFunction fl(GroundSet(2), ratings);
  CHECK(fl.eval(ElementSet(2)) == doctest::Approx(0.0));
  CHECK(fl.eval(ElementSet::of(2, {0})) == doctest::Approx((5.0 + 1.0) / (5.0 * 2)));
  CHECK(fl.eval(ElementSet::full(2)) == doctest::Approx((5.0 + 3.0) / (5.0 * 2)));
  CHECK(fl.eval(ElementSet::full(2)) <= 1.0);
  CHECK_THROWS_AS(FacilityLocationFunction(GroundSet(2), 2 * ratings, 5.0),
                  std::invalid_argument);
}

TEST_CASE("robust average oracle") {
  SUBCASE("two-function arithmetic") {
    auto f1 = modular({0.4});
    auto f2 = modular({1.2});
    auto g = build_robust_average({f1, f2}, 1.0);
    CHECK(g->eval(ElementSet::of(1, {0})) == doctest::Approx(0.7));
  }
  SUBCASE("single function reduces to truncation") {
    auto f = modular({0.3, 0.9});
    auto g = build_robust_average({f}, 1.0);
    TruncatedOracle truncated(f, 1.0);
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
      auto s = ElementSet::from_mask(2, mask);
      CHECK(g->eval(s) == doctest::Approx(truncated.eval(s)));
    }
  }
  SUBCASE("invalid gamma") {
    CHECK_THROWS_AS(build_robust_average({modular({1.0})}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_robust_average({modular({1.0})}, -1.0), std::invalid_argument);
  }
  SUBCASE("g stays submodular and monotone on random coverage triples") {
    auto rng = testing::make_rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<OraclePtr> fs;
      for (int i = 0; i < 3; ++i) fs.push_back(testing::random_coverage(6, 10, 0.4, rng));
      auto g = build_robust_average(fs, 0.5);
      auto report = check_submodular_monotone(*g);
      CHECK(report.ok());
    }
  }
  SUBCASE("g <= gamma with equality exactly when every objective reaches gamma") {
    auto rng = testing::make_rng(11);
    std::vector<OraclePtr> fs;
    for (int i = 0; i < 2; ++i) fs.push_back(testing::random_coverage(5, 8, 0.5, rng));
    const double gamma = 0.4;
    auto g = build_robust_average(fs, gamma);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      auto s = ElementSet::from_mask(5, mask);
      double gv = g->eval(s);
      CHECK(gv <= gamma + 1e-12);
      bool all_reach = true;
      double avg = 0.0;
      for (const auto& f : fs) {
        double v = f->eval(s);
        avg += v;
        all_reach = all_reach && v >= gamma;
      }
      CHECK(gv <= avg / 2 + 1e-12);
      CHECK((gv >= gamma - 1e-12) == all_reach);
    }
  }
}

TEST_CASE("mixtures") {
  auto f1 = modular({1.0, 0.0, 2.0});
  auto f2 = modular({0.0, 3.0, 1.0});
  SUBCASE("unit vector selects one objective") {
    Eigen::VectorXd q(2);
    q << 1.0, 0.0;
    auto fq = mix(q, {f1, f2});
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      auto s = ElementSet::from_mask(3, mask);
      CHECK(fq->eval(s) == doctest::Approx(f1->eval(s)));
    }
  }
  SUBCASE("uniform mixture of identical objectives is the objective") {
    Eigen::VectorXd q(2);
    q << 0.5, 0.5;
    auto fq = mix(q, {f1, f1});
    CHECK(fq->eval(ElementSet::of(3, {0, 2})) == doctest::Approx(f1->eval(ElementSet::of(3, {0, 2}))));
  }
  SUBCASE("blended modular weights, checked pointwise on all subsets") {
    Eigen::VectorXd q(2);
    q << 0.3, 0.7;
    auto w1 = modular({1.0, 2.0, 0.5, 0.0, 4.0});
    auto w2 = modular({2.0, 0.0, 1.5, 3.0, 1.0});
    auto fq = mix(q, {w1, w2});
    auto blended = modular({0.3 * 1 + 0.7 * 2, 0.3 * 2, 0.3 * 0.5 + 0.7 * 1.5, 0.7 * 3,
                            0.3 * 4 + 0.7 * 1});
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      auto s = ElementSet::from_mask(5, mask);
      CHECK(fq->eval(s) == doctest::Approx(blended->eval(s)));
    }
  }
  SUBCASE("invalid weights") {
    Eigen::VectorXd negative(2), off_sum(2);
    negative << -0.1, 1.1;
    off_sum << 0.6, 0.6;
    CHECK_THROWS_AS(mix(negative, {f1, f2}), std::invalid_argument);
    CHECK_THROWS_AS(mix(off_sum, {f1, f2}), std::invalid_argument);
  }
}

TEST_CASE("submodularity and monotonicity checker") {
  SUBCASE("modular passes") {
    CHECK(check_submodular_monotone(*modular({1, 2, 3})).ok());
  }
  SUBCASE("|S|^2 is supermodular, counterexample is a genuine violation") {
    FunctionOracle f(GroundSet(4), [](const ElementSet& s) {
      return static_cast<double>(s.size()) * s.size();
    });
    auto report = check_submodular_monotone(f);
    CHECK(report.monotone);
    CHECK(!report.submodular);
    REQUIRE(report.submodular_violation.has_value());
    const auto& v = *report.submodular_violation;
    CHECK(v.a.subset_of(v.b));
    CHECK(!v.b.contains(v.element));
    CHECK(marginal(f, v.a, v.element) < marginal(f, v.b, v.element));
  }
  SUBCASE("non-monotone function flagged") {
    FunctionOracle f(GroundSet(3), [](const ElementSet& s) {
      return s.contains(0) ? 0.5 : 1.0;
    });
    CHECK(!check_submodular_monotone(f).monotone);
  }
  SUBCASE("perturbed family members stay monotone submodular") {
    auto rng = testing::make_rng(3);
    auto base = testing::random_facility(8, 6, rng);
    PerturbedFamilySpec spec{.k = 3, .lambda_size = 4, .noise_scale = 0.05, .seed = 99};
    auto family = make_perturbed_family(base, spec);
    for (const auto& member : family.members) {
      CHECK(check_submodular_monotone(*member).ok());
    }
  }
  SUBCASE("size refusal") {
    FunctionOracle f(GroundSet(17), [](const ElementSet& s) { return double(s.size()); });
    CHECK_THROWS_AS(check_submodular_monotone(f), SizeLimitError);
  }
}

TEST_CASE("truncation") {
  auto f = modular({0.5, 0.8, 0.9});
  TruncatedOracle t(f, 1.0);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    auto s = ElementSet::from_mask(3, mask);
    CHECK(t.eval(s) <= 1.0 + 1e-15);
    if (f->eval(s) >= 1.0) CHECK(t.eval(s) == doctest::Approx(1.0));
  }
  CHECK(check_submodular_monotone(t).ok());
  CHECK_THROWS_AS(TruncatedOracle(f, 0.0), std::invalid_argument);
}

TEST_CASE("perturbed family determinism and structure") {
  auto rng = testing::make_rng(42);
  auto base = testing::random_coverage(10, 12, 0.3, rng);
  PerturbedFamilySpec spec{.k = 4, .lambda_size = 5, .noise_scale = -1.0, .seed = 1234};
  auto a = make_perturbed_family(base, spec);
  auto b = make_perturbed_family(base, spec);
  REQUIRE(a.members.size() == 4);
  CHECK(a.scale == doctest::Approx(1.0 / 10));  // the 1/n default
  for (int i = 0; i < 4; ++i) {
    CHECK(a.lambdas[i].size() == 5);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      auto s = ElementSet::from_mask(10, mask);
      CHECK(a.members[i]->eval(s) == doctest::Approx(b.members[i]->eval(s)));
    }
  }
}

TEST_CASE("call counting is exact, attributed through wrappers, and atomic") {
  auto f = modular({1.0, 2.0});
  auto g = build_robust_average({f}, 1.0);
  auto before_f = f->call_count();
  auto before_g = g->call_count();
  g->eval(ElementSet(2));
  CHECK(g->call_count() - before_g == 1);
  CHECK(f->call_count() - before_f == 1);  // inner call attributed transparently

  // Concurrent metering: totals must be exact.
  auto base = f->call_count();
  constexpr int kThreads = 4, kPerThread = 500;
  std::vector<std::thread> workers;
  for (int w = 0; w < kThreads; ++w) {
    workers.emplace_back([&f] {
      for (int i = 0; i < kPerThread; ++i) f->eval(ElementSet(2));
    });
  }
  for (auto& w : workers) w.join();
  CHECK(f->call_count() - base == kThreads * kPerThread);
}

TEST_CASE("empty-set values of the concrete families") {
  auto rng = testing::make_rng(5);
  CHECK(modular({1, 2})->eval(ElementSet(2)) == 0.0);
  CHECK(testing::random_coverage(5, 8, 0.4, rng)->eval(ElementSet(5)) == 0.0);
  CHECK(testing::random_facility(5, 4, rng)->eval(ElementSet(5)) == 0.0);
}
