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

#include "robsub/checks.hpp"
#include "robsub/fpl.hpp"
#include "robsub/offline.hpp"
#include "robsub/online.hpp"
#include "robsub/union_matroid.hpp"
#include "test_util.hpp"

using namespace robsub;

namespace {

LinearMaximizer two_point_argmax(const Eigen::VectorXd& d0, const Eigen::VectorXd& d1) {
  return [d0, d1](const Eigen::VectorXd& w) { return w.dot(d1) > w.dot(d0) ? d1 : d0; };
}

}  // namespace

TEST_CASE("fpl instance basics") {
  SUBCASE("eta = inf gives the zero perturbation; argmax of zero is the first decision") {
    FplInstance inst(2, std::numeric_limits<double>::infinity(), 7);
    CHECK(inst.perturbation().cwiseAbs().maxCoeff() == 0.0);
    Eigen::VectorXd d0(2), d1(2);
    d0 << 1, 0;
    d1 << 0, 1;
    CHECK(fpl_step(inst, two_point_argmax(d0, d1)) == d0);
  }
  SUBCASE("perturbation lands in [0, 1/eta]") {
    FplInstance inst(16, 4.0, 99);
    CHECK(inst.perturbation().minCoeff() >= 0.0);
    CHECK(inst.perturbation().maxCoeff() <= 0.25);
  }
  SUBCASE("constant rewards dominate the perturbation eventually") {
    Eigen::VectorXd d0(2), d1(2), s(2);
    d0 << 1, 0;
    d1 << 0, 1;
    s << 0.1, 0.4;  // favors d1
    FplInstance inst(2, 1.0, 3);
    auto argmax = two_point_argmax(d0, d1);
    Eigen::VectorXd last;
    for (int t = 0; t < 50; ++t) {
      last = fpl_step(inst, argmax);
      inst.accumulate(s);
    }
    CHECK(last == d1);  // perturbation bounded by 1/eta = 1, gap grows as 0.3 t
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(FplInstance(0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FplInstance(2, 0.0, 1), std::invalid_argument);
  }
}

TEST_CASE("fpl regret against adversarial two-point rewards") {
  // Alternating +-1 rewards on a two-decision set; hindsight value is zero
  // and the eta L A T + D / eta bound must hold on average.
  const int horizon = 1000;
  Eigen::VectorXd d0(2), d1(2);
  d0 << 1, 0;
  d1 << 0, 1;
  std::vector<Eigen::VectorXd> rewards;
  for (int t = 0; t < horizon; ++t) {
    Eigen::VectorXd s(2);
    s << (t % 2 == 0 ? 1.0 : -1.0), (t % 2 == 0 ? -1.0 : 1.0);
    rewards.push_back(s);
  }
  const double L = 1.0, A = 2.0, D = 2.0;
  const double eta = std::sqrt(D / (L * A * horizon));
  double total_regret = 0.0;
  const int draws = 40;
  for (int draw = 0; draw < draws; ++draw) {
    FplInstance inst(2, eta, 1234 + static_cast<std::uint64_t>(draw));
    auto argmax = two_point_argmax(d0, d1);
    double payoff = 0.0;
    Eigen::VectorXd best_cum = Eigen::VectorXd::Zero(2);
    for (const auto& s : rewards) {
      payoff += s.dot(fpl_step(inst, argmax));
      inst.accumulate(s);
      best_cum += s;
    }
    double hindsight = std::max(best_cum.dot(d0), best_cum.dot(d1));
    total_regret += hindsight - payoff;
  }
  CHECK(total_regret / draws <= eta * L * A * horizon + D / eta);
}

TEST_CASE("schedule generators") {
  auto rng = testing::make_rng(601);
  std::vector<OraclePtr> fs = {testing::random_coverage(8, 10, 0.4, rng),
                               testing::random_coverage(8, 10, 0.4, rng)};
  SUBCASE("stationary with one round is the instance itself") {
    auto s = stationary_schedule(fs, 1);
    CHECK(s.horizon == 1);
    CHECK(s.rounds[0][0] == fs[0]);
    CHECK(s.rounds[0][1] == fs[1]);
  }
  SUBCASE("switching changes the hindsight optimum away from either half's") {
    // One coverage objective per phase, on disjoint targets.
    std::vector<std::vector<int>> covers_a(8), covers_b(8);
    for (int e = 0; e < 4; ++e) covers_a[e] = {e};
    for (int e = 4; e < 8; ++e) covers_b[e] = {e - 4};
    auto fa = std::make_shared<CoverageFunction>(GroundSet(8), covers_a,
                                                 Eigen::VectorXd::Constant(4, 0.25));
    auto fb = std::make_shared<CoverageFunction>(GroundSet(8), covers_b,
                                                 Eigen::VectorXd::Constant(4, 0.25));
    auto schedule =
        switching_schedule({OraclePtr(fa)}, {OraclePtr(fb)}, 10, 5);
    auto m = std::static_pointer_cast<const Matroid>(
        std::make_shared<UniformMatroid>(GroundSet(8), 2));
    double best_mixed = 0.0, best_a = 0.0, best_b = 0.0;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
      auto s = ElementSet::from_mask(8, mask);
      if (!m->is_independent(s)) continue;
      best_mixed = std::max(best_mixed, 5 * fa->eval(s) + 5 * fb->eval(s));
      best_a = std::max(best_a, 10 * fa->eval(s));
      best_b = std::max(best_b, 10 * fb->eval(s));
    }
    CHECK(best_mixed < best_a);  // hedging differs from both specialist plans
    CHECK(best_mixed < best_b);
    CHECK(best_mixed >= best_a / 2 - 1e-12);
    CHECK(schedule.rounds[0][0] == OraclePtr(fa));
    CHECK(schedule.rounds[9][0] == OraclePtr(fb));
  }
  SUBCASE("drifting rounds stay monotone submodular and deterministic") {
    auto base = testing::random_facility(8, 5, rng);
    PerturbedFamilySpec spec{.k = 2, .lambda_size = 3, .noise_scale = 0.03, .seed = 5};
    auto a = drifting_schedule(base, spec, 12, 4);
    auto b = drifting_schedule(base, spec, 12, 4);
    for (int t : {0, 5, 11}) {
      for (int i = 0; i < 2; ++i) {
        CHECK(check_submodular_monotone(*a.rounds[t][i]).ok());
        for (std::uint64_t mask = 0; mask < 256; mask += 37) {
          auto s = ElementSet::from_mask(8, mask);
          CHECK(a.rounds[t][i]->eval(s) == doctest::Approx(b.rounds[t][i]->eval(s)));
        }
      }
    }
    bool moved = false;
    for (std::uint64_t mask = 1; mask < 256 && !moved; ++mask) {
      auto s = ElementSet::from_mask(8, mask);
      moved = std::abs(a.rounds[0][0]->eval(s) - a.rounds[6][0]->eval(s)) > 1e-12;
    }
    CHECK(moved);
  }
}

TEST_CASE("online softmin run") {
  auto rng = testing::make_rng(607);
  auto m = std::static_pointer_cast<const Matroid>(std::make_shared<PartitionMatroid>(
      GroundSet(8), std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}},
      std::vector<int>{1, 1}));
  std::vector<OraclePtr> fs = {testing::random_coverage(8, 12, 0.45, rng),
                               testing::random_coverage(8, 12, 0.45, rng)};

  SUBCASE("single round is structurally sound") {
    auto schedule = stationary_schedule(fs, 1);
    OnlineConfig cfg;
    cfg.seed = 3;
    auto result = online_softmin_run(schedule, m, 0.5, cfg);
    CHECK(result.ell == 1);
    REQUIRE(result.rounds.size() == 1);
    const auto& r = result.rounds[0];
    CHECK(static_cast<int>(r.witness.size()) <= result.ell);
    ElementSet cover(8);
    for (const auto& layer : r.witness) {
      CHECK(m->is_independent(layer));
      cover = cover.united(layer);
    }
    CHECK(r.played.subset_of(cover));
    CHECK(result.max_reward_l1 <= 8.0 + 1e-6);
  }
  SUBCASE("stationary adversary: averaged payoff improves and regret slope falls") {
    auto schedule = stationary_schedule(fs, 240);
    OnlineConfig cfg;
    cfg.seed = 11;
    auto result = online_softmin_run(schedule, m, 0.5, cfg);
    const auto& pay = result.report.per_round_payoffs;
    double early = pay.head(60).mean();
    double late = pay.tail(60).mean();
    CHECK(late >= early - 1e-9);
    const auto& regret = result.report.regret_curve;
    CHECK(regret[239] / 240.0 < regret[59] / 60.0);
    double per_round_benchmark = 0.5 * result.report.hindsight_value / 240.0;
    CHECK(late >= per_round_benchmark - 0.05);
  }
  SUBCASE("replay determinism") {
    auto schedule = stationary_schedule(fs, 20);
    OnlineConfig cfg;
    cfg.seed = 21;
    auto a = online_softmin_run(schedule, m, 0.5, cfg);
    auto b = online_softmin_run(schedule, m, 0.5, cfg);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t t = 0; t < a.rounds.size(); ++t) {
      CHECK(a.rounds[t].played == b.rounds[t].played);
      CHECK(a.rounds[t].payoff_min == b.rounds[t].payoff_min);
    }
  }
  SUBCASE("values outside [0,1] are rejected upfront") {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(8, 0.4);
    auto big = std::make_shared<ModularFunction>(GroundSet(8), w);  // f(V) = 3.2
    auto schedule = stationary_schedule({OraclePtr(big)}, 3);
    CHECK_THROWS_AS(online_softmin_run(schedule, m, 0.5, OnlineConfig{}),
                    std::invalid_argument);
  }
  SUBCASE("paper parameters are limited to tiny smoke runs") {
    auto schedule = stationary_schedule(fs, 4);
    OnlineConfig cfg;
    cfg.paper_params = true;
    CHECK_THROWS_AS(online_softmin_run(schedule, m, 0.5, cfg), std::invalid_argument);

    // n = 3, T = 3 literal run: alpha = 81, delta = 3^-6 3^-3.
    auto rng2 = testing::make_rng(13);
    auto tiny = std::static_pointer_cast<const Matroid>(
        std::make_shared<UniformMatroid>(GroundSet(3), 1));
    auto tiny_schedule = stationary_schedule({testing::random_coverage(3, 4, 0.6, rng2)}, 3);
    auto result = online_softmin_run(tiny_schedule, tiny, 0.5, cfg);
    CHECK(result.alpha_used == doctest::Approx(81.0));
    CHECK(result.delta_used == doctest::Approx(std::pow(3.0, -9)));
    CHECK(result.rounds.size() == 3);
  }
  SUBCASE("adaptive perturbations still produce valid plays") {
    auto schedule = stationary_schedule(fs, 10);
    OnlineConfig cfg;
    cfg.adaptive_q = true;
    cfg.seed = 17;
    auto result = online_softmin_run(schedule, m, 0.5, cfg);
    UnionMatroid u(m, result.ell);
    for (const auto& r : result.rounds) {
      CHECK(union_is_independent(u, r.played).independent);
    }
  }
}

TEST_CASE("regret accounting") {
  auto rng = testing::make_rng(613);
  auto m = std::static_pointer_cast<const Matroid>(
      std::make_shared<UniformMatroid>(GroundSet(6), 2));

  SUBCASE("always playing the hindsight optimum leaves regret -eps * hindsight") {
    auto f = testing::random_coverage(6, 8, 0.5, rng);
    auto schedule = stationary_schedule({f}, 50);
    double best = brute_force_opt({f}, Constraint{m}).opt;
    Eigen::VectorXd payoffs = Eigen::VectorXd::Constant(50, best);
    auto report = regret_1_minus_eps(schedule, payoffs, 0.25, m);
    CHECK(report.hindsight_value == doctest::Approx(50 * best));
    CHECK(report.regret_curve[49] == doctest::Approx(-0.25 * 50 * best));
    CHECK(report.regret_curve[49] <= 0.0);
  }
  SUBCASE("zero objectives give zero regret") {
    auto zero = std::make_shared<FunctionOracle>(GroundSet(6),
                                                 [](const ElementSet&) { return 0.0; });
    auto schedule = stationary_schedule({OraclePtr(zero)}, 10);
    auto report = regret_1_minus_eps(schedule, Eigen::VectorXd::Zero(10), 0.5, m);
    CHECK(report.hindsight_value == doctest::Approx(0.0));
    CHECK(report.regret_curve.cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("curve is recomputable from payoffs and the prefix benchmarks") {
    std::vector<OraclePtr> fs = {testing::random_coverage(6, 8, 0.5, rng),
                                 testing::random_coverage(6, 8, 0.5, rng)};
    auto schedule = stationary_schedule(fs, 30);
    Eigen::VectorXd payoffs(30);
    std::uniform_real_distribution<double> unit(0.0, 0.5);
    for (int t = 0; t < 30; ++t) payoffs[t] = unit(rng);
    auto report = regret_1_minus_eps(schedule, payoffs, 0.4, m);
    double per_round = report.hindsight_value / 30.0;
    double cum = 0.0;
    for (int t = 0; t < 30; ++t) {
      cum += payoffs[t];
      CHECK(report.regret_curve[t] == doctest::Approx(0.6 * per_round * (t + 1) - cum));
    }
  }
}
