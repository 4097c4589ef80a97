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

#include "robsub/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "robsub/multilinear.hpp"
#include "robsub/offline.hpp"
#include "robsub/rounding.hpp"
#include "robsub/softmin.hpp"
#include "robsub/union_matroid.hpp"

namespace robsub {

namespace {

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::VectorXd draw_perturbation(int n, double eta, std::uint64_t seed) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  if (std::isfinite(eta)) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0 / eta);
    for (int e = 0; e < n; ++e) q[e] = unit(rng);
  }
  return q;
}

// Exact-mode tables, shared across rounds that reuse the same oracle object
// (stationary schedules pay for 2^n evaluations once per objective).
class TableCache {
 public:
  const MultilinearTable* get(const OraclePtr& f) {
    auto it = cache_.find(f.get());
    if (it != cache_.end()) return it->second.get();
    auto table = std::make_unique<MultilinearTable>(*f);
    const MultilinearTable* out = table.get();
    cache_.emplace(f.get(), std::move(table));
    return out;
  }

 private:
  std::map<const SubmodularOracle*, std::unique_ptr<MultilinearTable>> cache_;
};

std::vector<std::uint64_t> independent_masks(const Matroid& m) {
  std::vector<std::uint64_t> masks;
  const int n = m.n();
  std::vector<std::pair<std::uint64_t, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [mask, start] = stack.back();
    stack.pop_back();
    masks.push_back(mask);
    for (int e = start; e < n; ++e) {
      std::uint64_t next = mask | (std::uint64_t{1} << e);
      if (m.is_independent(ElementSet::from_mask(n, next))) {
        stack.emplace_back(next, e + 1);
      }
    }
  }
  return masks;
}

}  // namespace

int online_layer_count(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  return std::max(1, ceil_guarded(std::log(1.0 / epsilon)));
}

void OnlineSchedule::validate() const {
  if (horizon < 1) throw std::invalid_argument("schedule needs horizon >= 1");
  if (k < 1) throw std::invalid_argument("schedule needs k >= 1");
  if (static_cast<int>(rounds.size()) != horizon) {
    throw std::invalid_argument("schedule must hold one collection per round");
  }
  for (const auto& collection : rounds) {
    if (static_cast<int>(collection.size()) != k) {
      throw std::invalid_argument("every round needs exactly k objectives");
    }
    for (const auto& f : collection) {
      if (!f || f->n() != ground.n) {
        throw std::invalid_argument("schedule objectives must share the ground set");
      }
    }
  }
}

OnlineSchedule stationary_schedule(const std::vector<OraclePtr>& objectives, int horizon) {
  if (objectives.empty()) throw std::invalid_argument("stationary schedule needs objectives");
  OnlineSchedule s;
  s.ground = objectives.front()->ground();
  s.horizon = horizon;
  s.k = static_cast<int>(objectives.size());
  s.rounds.assign(horizon, objectives);
  s.validate();
  return s;
}

OnlineSchedule switching_schedule(const std::vector<OraclePtr>& first,
                                  const std::vector<OraclePtr>& second, int horizon,
                                  int switch_at) {
  if (first.empty() || first.size() != second.size()) {
    throw std::invalid_argument("switching schedule needs two equal-size collections");
  }
  if (switch_at < 0 || switch_at > horizon) {
    throw std::invalid_argument("switch time must lie in [0, horizon]");
  }
  OnlineSchedule s;
  s.ground = first.front()->ground();
  s.horizon = horizon;
  s.k = static_cast<int>(first.size());
  for (int t = 0; t < horizon; ++t) s.rounds.push_back(t < switch_at ? first : second);
  s.validate();
  return s;
}

OnlineSchedule drifting_schedule(const OraclePtr& base, const PerturbedFamilySpec& spec,
                                 int horizon, int period) {
  if (period < 1) throw std::invalid_argument("drifting schedule needs period >= 1");
  if (horizon < 1) throw std::invalid_argument("drifting schedule needs horizon >= 1");
  const int n = base->n();

  // Fixed Lambda_i sets; the noise endpoints are redrawn each period and
  // rounds interpolate between consecutive endpoints.
  PerturbedFamily anchor = make_perturbed_family(base, spec);
  const int segments = (horizon + period - 1) / period + 1;
  std::vector<Eigen::VectorXd> endpoints;
  for (int p = 0; p <= segments; ++p) {
    std::mt19937_64 rng(substream(spec.seed, 7777 + static_cast<std::uint64_t>(p)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd xi(n);
    for (int e = 0; e < n; ++e) xi[e] = unit(rng);
    endpoints.push_back(xi);
  }

  OnlineSchedule s;
  s.ground = base->ground();
  s.horizon = horizon;
  s.k = spec.k;
  for (int t = 0; t < horizon; ++t) {
    const int p = t / period;
    const double lam = static_cast<double>(t % period) / static_cast<double>(period);
    Eigen::VectorXd xi = (1.0 - lam) * endpoints[p] + lam * endpoints[p + 1];
    std::vector<OraclePtr> collection;
    for (int i = 0; i < spec.k; ++i) {
      collection.push_back(
          std::make_shared<PerturbedOracle>(base, anchor.lambdas[i], xi, anchor.scale));
    }
    s.rounds.push_back(std::move(collection));
  }
  s.validate();
  return s;
}

OnlineResult online_softmin_run(const OnlineSchedule& schedule, const MatroidPtr& m,
                                double epsilon, const OnlineConfig& cfg) {
  schedule.validate();
  if (!m || m->n() != schedule.ground.n) {
    throw std::invalid_argument("matroid must match the schedule ground set");
  }
  const int n = schedule.ground.n;
  const int horizon = schedule.horizon;
  const int k = schedule.k;
  if (n > 20) throw SizeLimitError("online driver runs in exact mode; n <= 20 required");

  OnlineResult result;
  result.ell = online_layer_count(epsilon);
  const int ell = result.ell;

  double alpha = cfg.alpha;
  double delta = cfg.delta;
  if (cfg.paper_params) {
    if (n > 3 || horizon > 3) {
      throw std::invalid_argument(
          "paper parameters (alpha = n^2 T^2, delta = n^-6 T^-3) are limited to n <= 3, T <= 3 "
          "smoke runs; use the practical defaults otherwise");
    }
    const double dn = n, dT = horizon;
    alpha = dn * dn * dT * dT;
    delta = 1.0 / (std::pow(dn, 6) * std::pow(dT, 3));
  }
  if (alpha <= 0.0) {
    alpha = 4.0 * std::log(std::max(2.0, static_cast<double>(k))) *
            static_cast<double>(std::max(n, horizon));
  }
  if (delta <= 0.0) delta = static_cast<double>(ell) / 64.0;

  const int steps = [&] {
    double raw = static_cast<double>(ell) / delta;
    int s = static_cast<int>(std::llround(raw));
    if (s < 1 || std::abs(s * delta - static_cast<double>(ell)) > 1e-9) {
      throw std::invalid_argument("delta must divide ell evenly");
    }
    return s;
  }();

  double eta = cfg.eta;
  if (eta <= 0.0) {
    const double diameter = 2.0 * rank(*m, ElementSet::full(n));
    eta = std::min(1.0, std::sqrt(diameter / (static_cast<double>(n) * n * horizon)));
  }
  result.eta_used = eta;
  result.alpha_used = alpha;
  result.delta_used = delta;

  // Exact tables for every distinct oracle; rejects values outside [0,1].
  TableCache cache;
  std::vector<std::vector<const MultilinearTable*>> tables(horizon);
  for (int t = 0; t < horizon; ++t) {
    for (const auto& f : schedule.rounds[t]) {
      const MultilinearTable* table = cache.get(f);
      if (table->min_value() < -1e-9 || table->max_value() > 1.0 + 1e-9) {
        throw std::invalid_argument("schedule rejected: objective values outside [0,1]");
      }
      tables[t].push_back(table);
    }
  }

  UnionMatroid u(m, ell);
  const Eigen::VectorXd q0 = draw_perturbation(n, eta, substream(cfg.seed, 1));
  std::vector<Eigen::VectorXd> acc(steps, Eigen::VectorXd::Zero(n));

  const bool exact_hindsight = n <= 16;
  std::vector<std::uint64_t> hind_masks;
  std::vector<double> hind_cum;
  if (exact_hindsight) {
    hind_masks = independent_masks(*m);
    hind_cum.assign(hind_masks.size(), 0.0);
  }
  Eigen::VectorXd hind_best(horizon);
  Eigen::VectorXd payoffs(horizon);

  std::vector<Eigen::VectorXd> prev_points(steps);
  std::vector<Eigen::VectorXd> directions(steps);

  for (int t = 1; t <= horizon; ++t) {
    const auto& round_tables = tables[t - 1];
    const Eigen::VectorXd q =
        cfg.adaptive_q ? draw_perturbation(n, eta, substream(cfg.seed, 1000 + t)) : q0;

    // Inner ascent driven by the per-grid-point FPL accumulators.
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < steps; ++s) {
      prev_points[s] = y;
      ElementSet z_set = max_weight_independent_set(*m, acc[s] + q);
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      z_set.for_each([&](int e) { z[e] = 1.0; });
      directions[s] = z;
      for (int e = 0; e < n; ++e) y[e] += delta * (1.0 - y[e]) * z[e];
    }

    // Play a swap-rounded set; extra draws estimate the expected payoff.
    ConvexDecomposition d = decompose(FractionalPoint(y), u);
    const std::uint64_t round_seed = substream(cfg.seed, 3000000ULL + t);
    ElementSet played = swap_round(d, u, round_seed);

    Eigen::VectorXd payoff_per_objective = Eigen::VectorXd::Zero(k);
    const int draws = std::max(1, cfg.rounding_draws);
    for (int draw = 0; draw < draws; ++draw) {
      ElementSet sample =
          draw == 0 ? played : swap_round(d, u, substream(round_seed, static_cast<std::uint64_t>(draw)));
      const std::uint64_t mask = sample.mask();
      for (int i = 0; i < k; ++i) payoff_per_objective[i] += round_tables[i]->value_at(mask);
    }
    payoff_per_objective /= static_cast<double>(draws);

    RoundRecord record;
    record.t = t;
    record.played = played;
    record.payoff_per_objective = payoff_per_objective;
    record.payoff_min = payoff_per_objective.minCoeff();
    UnionMembership membership = union_is_independent(u, played);
    if (!membership.independent || static_cast<int>(membership.witness.size()) > ell) {
      throw std::logic_error("online play lost its union-matroid witness");
    }
    record.witness = std::move(membership.witness);
    payoffs[t - 1] = record.payoff_min;

    if (exact_hindsight) {
      for (std::size_t idx = 0; idx < hind_masks.size(); ++idx) {
        double worst = 1.0;
        for (int i = 0; i < k; ++i) {
          worst = std::min(worst, round_tables[i]->value_at(hind_masks[idx]));
        }
        hind_cum[idx] += worst;
      }
      hind_best[t - 1] = *std::max_element(hind_cum.begin(), hind_cum.end());
    }

    // Full information: reveal the round's functions at every grid point.
    for (int s = 0; s < steps; ++s) {
      Eigen::VectorXd dh = delta_H_exact(prev_points[s], round_tables, alpha);
      dh = dh.cwiseMax(0.0);  // exact-mode values may carry -1e-17 noise
      const double l1 = dh.sum();
      const double dot = std::abs(directions[s].dot(dh));
      if (l1 > static_cast<double>(n) + 1e-6 || dot > static_cast<double>(n) + 1e-6) {
        throw std::logic_error("FPL reward bound violated: values left [0,1]?");
      }
      result.max_reward_l1 = std::max(result.max_reward_l1, l1);
      result.max_reward_dot = std::max(result.max_reward_dot, dot);
      acc[s] += dh;
    }
    result.rounds.push_back(std::move(record));
  }

  result.report.per_round_payoffs = payoffs;
  result.report.hindsight_exact = exact_hindsight;
  if (exact_hindsight) {
    result.report.hindsight_value = hind_best[horizon - 1];
    result.report.regret_curve.resize(horizon);
    double cum_payoff = 0.0;
    for (int t = 0; t < horizon; ++t) {
      cum_payoff += payoffs[t];
      result.report.regret_curve[t] = (1.0 - epsilon) * hind_best[t] - cum_payoff;
    }
  } else {
    RegretReport bound = regret_1_minus_eps(schedule, payoffs, epsilon, m);
    result.report = std::move(bound);
  }
  return result;
}

RegretReport regret_1_minus_eps(const OnlineSchedule& schedule, const Eigen::VectorXd& payoffs,
                                double epsilon, const MatroidPtr& m) {
  schedule.validate();
  if (!m) throw std::invalid_argument("regret needs the matroid");
  if (payoffs.size() != schedule.horizon) {
    throw std::invalid_argument("payoffs must hold one entry per round");
  }
  const int n = schedule.ground.n;
  const int horizon = schedule.horizon;
  const int k = schedule.k;

  RegretReport report;
  report.per_round_payoffs = payoffs;
  report.regret_curve.resize(horizon);

  if (n <= 16) {
    TableCache cache;
    std::vector<std::uint64_t> masks = independent_masks(*m);
    std::vector<double> cum(masks.size(), 0.0);
    double cum_payoff = 0.0;
    for (int t = 0; t < horizon; ++t) {
      std::vector<const MultilinearTable*> round_tables;
      for (const auto& f : schedule.rounds[t]) round_tables.push_back(cache.get(f));
      for (std::size_t idx = 0; idx < masks.size(); ++idx) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < k; ++i) worst = std::min(worst, round_tables[i]->value_at(masks[idx]));
        cum[idx] += worst;
      }
      cum_payoff += payoffs[t];
      report.regret_curve[t] =
          (1.0 - epsilon) * *std::max_element(cum.begin(), cum.end()) - cum_payoff;
    }
    report.hindsight_value = *std::max_element(cum.begin(), cum.end());
    report.hindsight_exact = true;
    return report;
  }

  // Large grounds: certified lower bound only. Solve the robust problem on the
  // time-averaged objectives and score each resulting layer (a feasible set)
  // against the true hindsight objective.
  std::vector<OraclePtr> aggregated;
  for (int i = 0; i < k; ++i) {
    aggregated.push_back(std::make_shared<FunctionOracle>(
        schedule.ground, [&schedule, i](const ElementSet& s) {
          double total = 0.0;
          for (const auto& round : schedule.rounds) total += round[i]->eval(s);
          return total / static_cast<double>(schedule.rounds.size());
        }));
  }
  RobustInstance aggregate_instance{schedule.ground, aggregated, Constraint{m}, epsilon};
  BiCriteriaSolution sol = robust_offline_solve(aggregate_instance);
  auto hindsight_at = [&](const ElementSet& s) {
    double total = 0.0;
    for (int t = 0; t < horizon; ++t) {
      double worst = std::numeric_limits<double>::infinity();
      for (int i = 0; i < k; ++i) worst = std::min(worst, schedule.rounds[t][i]->eval(s));
      total += worst;
    }
    return total;
  };
  double best = hindsight_at(ElementSet(n));
  for (const auto& layer : sol.layers) best = std::max(best, hindsight_at(layer));
  report.hindsight_value = best;
  report.hindsight_exact = false;
  double cum_payoff = 0.0;
  for (int t = 0; t < horizon; ++t) {
    cum_payoff += payoffs[t];
    // Prefix benchmarks are not tracked on this path; scale the final bound.
    report.regret_curve[t] =
        (1.0 - epsilon) * best * static_cast<double>(t + 1) / horizon - cum_payoff;
  }
  return report;
}

}  // namespace robsub
