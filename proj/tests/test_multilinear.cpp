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
#include <limits>

#include "robsub/multilinear.hpp"
#include "test_util.hpp"

using namespace robsub;

TEST_CASE("fractional point clamping") {
  Eigen::VectorXd y(3);
  y << 0.5, 1.0 + 1e-13, -1e-13;
  FractionalPoint p(y);
  CHECK(p[1] == 1.0);
  CHECK(p[2] == 0.0);
  y[0] = 1.1;
  CHECK_THROWS_AS(FractionalPoint{y}, std::invalid_argument);
}

TEST_CASE("exact multilinear evaluation") {
  auto rng = testing::make_rng(201);
  SUBCASE("indicator points recover the set function") {
    auto f = testing::random_coverage(6, 8, 0.4, rng);
    for (std::uint64_t mask = 0; mask < 64; mask += 9) {
      auto s = ElementSet::from_mask(6, mask);
      CHECK(multilinear_exact(*f, FractionalPoint::indicator(s)) == doctest::Approx(f->eval(s)));
    }
  }
  SUBCASE("modular objectives are linear") {
    Eigen::VectorXd w(4);
    w << 0.2, 0.7, 0.1, 0.4;
    ModularFunction f(GroundSet(4), w);
    Eigen::VectorXd y(4);
    y << 0.3, 0.9, 0.5, 0.0;
    CHECK(multilinear_exact(f, FractionalPoint(y)) == doctest::Approx(w.dot(y)));
  }
  SUBCASE("uniform half point averages all subsets") {
    auto f = testing::random_coverage(3, 5, 0.6, rng);
    double mean = 0.0;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      mean += f->eval(ElementSet::from_mask(3, mask));
    }
    mean /= 8.0;
    CHECK(multilinear_exact(*f, FractionalPoint(Eigen::VectorXd::Constant(3, 0.5))) ==
          doctest::Approx(mean));
  }
  SUBCASE("size refusal") {
    FunctionOracle f(GroundSet(21), [](const ElementSet& s) { return double(s.size()); });
    CHECK_THROWS_AS(multilinear_exact(f, FractionalPoint::zero(21)), SizeLimitError);
    CHECK_THROWS_AS(MultilinearTable{f}, SizeLimitError);
  }
  SUBCASE("table agrees with the direct sum") {
    auto f = testing::random_coverage(8, 10, 0.4, rng);
    MultilinearTable table(*f);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd y(8);
      for (int e = 0; e < 8; ++e) y[e] = unit(rng);
      CHECK(table.value(y) == doctest::Approx(multilinear_exact(*f, FractionalPoint(y))));
    }
  }
}

TEST_CASE("monte-carlo estimator") {
  auto rng = testing::make_rng(211);
  SUBCASE("integral points are exact with zero error") {
    auto f = testing::random_coverage(5, 8, 0.5, rng);
    auto s = ElementSet::of(5, {0, 3});
    auto est = multilinear_estimate(*f, FractionalPoint::indicator(s), {.samples = 64, .seed = 1});
    CHECK(est.value == doctest::Approx(f->eval(s)));
    CHECK(est.std_error == doctest::Approx(0.0));
  }
  SUBCASE("unbiased for modular objectives") {
    Eigen::VectorXd w(6);
    w << 0.2, 0.5, 0.1, 0.9, 0.3, 0.6;
    ModularFunction f(GroundSet(6), w);
    Eigen::VectorXd y(6);
    y << 0.1, 0.8, 0.4, 0.5, 0.2, 0.9;
    auto est = multilinear_estimate(f, FractionalPoint(y), {.samples = 10000, .seed = 5});
    CHECK(std::abs(est.value - w.dot(y)) <= 4 * est.std_error + 1e-12);
  }
  SUBCASE("matches the exact evaluator within 4 standard errors on nearly all seeds") {
    auto f = testing::random_coverage(10, 12, 0.35, rng);
    Eigen::VectorXd y(10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int e = 0; e < 10; ++e) y[e] = unit(rng);
    const double exact = multilinear_exact(*f, FractionalPoint(y));
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto est = multilinear_estimate(*f, FractionalPoint(y), {.samples = 2000, .seed = seed});
      if (std::abs(est.value - exact) <= 4 * est.std_error) ++hits;
    }
    CHECK(hits >= 99);
  }
  SUBCASE("deterministic given the seed, antithetic variant included") {
    auto f = testing::random_coverage(6, 8, 0.5, rng);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(6, 0.3);
    for (bool anti : {false, true}) {
      EstimatorConfig cfg{.samples = 500, .seed = 42, .antithetic = anti};
      auto a = multilinear_estimate(*f, FractionalPoint(y), cfg);
      auto b = multilinear_estimate(*f, FractionalPoint(y), cfg);
      CHECK(a.value == b.value);
      CHECK(a.std_error == b.std_error);
    }
  }
  SUBCASE("sample count validation") {
    auto f = testing::random_coverage(4, 6, 0.5, rng);
    CHECK_THROWS_AS(multilinear_estimate(*f, FractionalPoint::zero(4), {.samples = 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("delta_e marginals") {
  auto rng = testing::make_rng(223);
  SUBCASE("saturated coordinates contribute nothing") {
    auto f = testing::random_coverage(5, 8, 0.5, rng);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(5, 0.4);
    y[2] = 1.0;
    CHECK(delta_e_exact(*f, FractionalPoint(y), 2) == doctest::Approx(0.0));
    CHECK(delta_e(*f, FractionalPoint(y), 2, {.samples = 200, .seed = 3}) ==
          doctest::Approx(0.0));
  }
  SUBCASE("modular closed form w_e (1 - y_e)") {
    Eigen::VectorXd w(4);
    w << 0.3, 0.8, 0.5, 0.1;
    ModularFunction f(GroundSet(4), w);
    Eigen::VectorXd y(4);
    y << 0.25, 0.5, 0.75, 0.0;
    for (int e = 0; e < 4; ++e) {
      CHECK(delta_e_exact(f, FractionalPoint(y), e) == doctest::Approx(w[e] * (1 - y[e])));
    }
    double mc = delta_e(f, FractionalPoint(y), 1, {.samples = 20000, .seed = 9});
    CHECK(mc == doctest::Approx(w[1] * 0.5).epsilon(0.05));
  }
  SUBCASE("finite-difference consistency of the (1-y_e) grad identity") {
    auto f = testing::random_coverage(8, 10, 0.4, rng);
    MultilinearTable table(*f);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    const double h = 1e-4;
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd y(8);
      for (int e = 0; e < 8; ++e) y[e] = unit(rng);
      for (int e = 0; e < 8; ++e) {
        Eigen::VectorXd up = y, down = y;
        up[e] += h;
        down[e] -= h;
        double central = (table.value(up) - table.value(down)) / (2 * h);
        CHECK(std::abs(table.delta(y)[e] - (1 - y[e]) * central) <= 1e-5);
      }
    }
  }
  SUBCASE("out of range element") {
    auto f = testing::random_coverage(4, 6, 0.5, rng);
    CHECK_THROWS_AS(delta_e_exact(*f, FractionalPoint::zero(4), 4), std::domain_error);
  }
}

TEST_CASE("multilinear structure of monotone submodular objectives") {
  auto rng = testing::make_rng(227);
  auto f = testing::random_coverage(7, 9, 0.45, rng);
  MultilinearTable table(*f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SUBCASE("gradients are nonnegative") {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd y(7);
      for (int e = 0; e < 7; ++e) y[e] = unit(rng);
      CHECK(table.gradient(y).minCoeff() >= -1e-12);
    }
  }
  SUBCASE("concave along nonnegative directions") {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd y(7), d(7);
      for (int e = 0; e < 7; ++e) {
        y[e] = 0.3 * unit(rng);
        d[e] = unit(rng);
      }
      double prev_quotient = std::numeric_limits<double>::infinity();
      const double step = 0.1;
      for (int i = 0; i + 1 < 6; ++i) {
        double a = table.value(y + (i * step) * d);
        double b = table.value(y + ((i + 1) * step) * d);
        double quotient = (b - a) / step;
        CHECK(quotient <= prev_quotient + 1e-9);
        prev_quotient = quotient;
      }
    }
  }
  SUBCASE("gradient inequality F(x v y) <= F(x) + y . grad F(x)") {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x(7), y(7);
      for (int e = 0; e < 7; ++e) {
        x[e] = unit(rng);
        y[e] = unit(rng);
      }
      Eigen::VectorXd join = x.cwiseMax(y);
      CHECK(table.value(join) <= table.value(x) + y.dot(table.gradient(x)) + 1e-9);
    }
  }
  SUBCASE("estimator mean over many seeds approaches the exact value") {
    Eigen::VectorXd y(7);
    for (int e = 0; e < 7; ++e) y[e] = unit(rng);
    const double exact = table.value(y);
    double mean = 0.0, se_acc = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
      auto est = multilinear_estimate(
          *f, FractionalPoint(y), {.samples = 400, .seed = static_cast<std::uint64_t>(900 + s)});
      mean += est.value;
      se_acc += est.std_error * est.std_error;
    }
    mean /= seeds;
    double se_of_mean = std::sqrt(se_acc) / seeds;
    CHECK(std::abs(mean - exact) <= 3 * se_of_mean + 1e-9);
  }
}

TEST_CASE("shared-pool delta estimates") {
  auto rng = testing::make_rng(229);
  auto f = testing::random_coverage(6, 8, 0.5, rng);
  MultilinearTable table(*f);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(6, 0.35);
  Eigen::VectorXd est = delta_all_estimate(*f, FractionalPoint(y), {.samples = 20000, .seed = 4});
  Eigen::VectorXd exact = table.delta(y);
  for (int e = 0; e < 6; ++e) {
    CHECK(std::abs(est[e] - exact[e]) <= 0.02);
  }
}
