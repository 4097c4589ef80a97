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

#include "robsub/continuous.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "robsub/functions.hpp"
#include "robsub/simplex.hpp"

namespace robsub {

namespace {

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int steps_for(double ell, double delta) {
  double raw = ell / delta;
  int steps = static_cast<int>(std::llround(raw));
  if (steps < 1 || std::abs(steps * delta - ell) > 1e-9) {
    throw std::invalid_argument("delta must divide ell evenly");
  }
  return steps;
}

}  // namespace

int continuous_layer_count(int k, double epsilon, double c) {
  return ceil_guarded(std::log(static_cast<double>(k) / epsilon) + std::log(1.0 / c));
}

DirectionResult find_direction(const Eigen::VectorXd& y,
                               const std::vector<MultilinearTable>& truncated, double gamma,
                               const Matroid& m) {
  auto ps = m.partition_structure();
  if (!ps) {
    throw std::invalid_argument(
        "continuous path needs a matroid with an explicit part/budget polytope");
  }
  const int n = m.n();
  const auto k = static_cast<int>(truncated.size());
  if (k == 0) throw std::invalid_argument("find_direction needs objectives");

  // Variables: v_0..v_{n-1}, t_plus, t_minus  (t = t_plus - t_minus).
  // Maximize t subject to
  //   -v . grad_i + t <= F_i - gamma          (condition (a) with slack t)
  //   sum_{e in P_j} v_e <= b_j               (condition (b))
  //   v_e <= min(1, 1 - y_e)                  (conditions (b)+(c))
  const int vars = n + 2;
  const int rows = k + static_cast<int>(ps->parts.size()) + n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, vars);
  Eigen::VectorXd b(rows);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(vars);
  c[n] = 1.0;
  c[n + 1] = -1.0;

  int row = 0;
  for (int i = 0; i < k; ++i, ++row) {
    Eigen::VectorXd grad = truncated[i].gradient(y);
    double value = truncated[i].value(y);
    a.block(row, 0, 1, n) = -grad.transpose();
    a(row, n) = 1.0;
    a(row, n + 1) = -1.0;
    b[row] = value - gamma;
  }
  for (std::size_t j = 0; j < ps->parts.size(); ++j, ++row) {
    for (int e : ps->parts[j]) a(row, e) = 1.0;
    b[row] = static_cast<double>(ps->budgets[j]);
  }
  for (int e = 0; e < n; ++e, ++row) {
    a(row, e) = 1.0;
    b[row] = std::min(1.0, 1.0 - y[e]);
  }

  LpResult lp = solve_lp_max(c, a, b);
  DirectionResult out;
  if (lp.status != LpStatus::kOptimal) {
    out.feasible = false;  // numerically degenerate; treat as a rejection
    return out;
  }
  out.surplus = lp.objective;
  out.v = lp.x.head(n).cwiseMax(0.0);
  out.feasible = lp.objective >= -1e-9 * std::max(1.0, gamma);
  return out;
}

AscentTrace continuous_greedy_run(const std::vector<OraclePtr>& objectives, double gamma,
                                  double epsilon, const Matroid& m, const ContinuousConfig& cfg) {
  if (objectives.empty()) throw std::invalid_argument("continuous greedy needs objectives");
  if (gamma <= 0.0) throw std::invalid_argument("continuous greedy needs gamma > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  auto ps = m.partition_structure();
  if (!ps) {
    throw std::invalid_argument(
        "continuous path needs a matroid with an explicit part/budget polytope");
  }

  const int n = m.n();
  const auto k = static_cast<int>(objectives.size());
  const int ell = continuous_layer_count(k, epsilon, cfg.c);
  const int steps = steps_for(static_cast<double>(ell), cfg.delta);

  std::vector<MultilinearTable> truncated;
  truncated.reserve(objectives.size());
  for (const auto& f : objectives) {
    truncated.emplace_back(TruncatedOracle(f, gamma));
  }

  AscentTrace trace;
  trace.gamma = gamma;
  trace.delta = cfg.delta;
  trace.ell = ell;
  trace.f_values.resize(k, steps + 1);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  trace.grid.push_back(0.0);
  trace.points.push_back(y);
  for (int i = 0; i < k; ++i) trace.f_values(i, 0) = truncated[i].value(y);

  for (int s = 1; s <= steps; ++s) {
    DirectionResult dir = find_direction(y, truncated, gamma, m);
    if (!dir.feasible) {
      trace.gamma_too_large = true;
      trace.f_values.conservativeResize(k, s);
      break;
    }
    // Direction vertices certify y(tau) in tau * P(M): weights sum to delta
    // per step once scaled.
    trace.step_vertices.push_back(interval_decompose(dir.v, *ps));
    trace.directions.push_back(dir.v);

    y += cfg.delta * dir.v;
    y = y.cwiseMin(1.0).cwiseMax(0.0);
    trace.grid.push_back(s * cfg.delta);
    trace.points.push_back(y);
    for (int i = 0; i < k; ++i) trace.f_values(i, s) = truncated[i].value(y);
  }
  return trace;
}

ConvexDecomposition decomposition_from_trace(const AscentTrace& trace, const UnionMatroid& u) {
  if (trace.step_vertices.empty()) throw std::invalid_argument("trace holds no steps");
  // The stored step mixtures are the y(tau) in tau P(M) certificates: each
  // step's vertex weights sum to one and y(ell) = sum_s delta * v_s. Taking
  // unions of the raw vertices along unit-spaced probes does NOT reproduce
  // the marginals (mass of one element in two unit blocks can land on
  // overlapping circle offsets and be counted once), so the M_ell atoms come
  // from the exact part/budget interval decomposition of the endpoint, whose
  // membership the certificates guarantee.
  for (const auto& mixture : trace.step_vertices) {
    double total = 0.0;
    for (const auto& [w, atom] : mixture) total += w;
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("trace step mixture does not sum to one");
    }
  }
  return decompose(FractionalPoint(trace.points.back()), u);
}

DecisionResult decision_solve(const std::vector<OraclePtr>& objectives, double gamma,
                              double epsilon, const MatroidPtr& m, const ContinuousConfig& cfg) {
  if (!m) throw std::invalid_argument("decision_solve needs a matroid");
  DecisionResult result;
  const int n = m->n();
  if (gamma <= 0.0) {
    // Vacuous target: the empty set reaches every f_i >= 0.
    result.accepted = true;
    result.set = ElementSet(n);
    result.witness.assign(1, ElementSet(n));
    return result;
  }

  result.trace = continuous_greedy_run(objectives, gamma, epsilon, *m, cfg);
  if (result.trace.gamma_too_large) return result;

  const int ell = result.trace.ell;
  auto u = UnionMatroid(m, ell);

  std::vector<OraclePtr> truncated;
  truncated.reserve(objectives.size());
  for (const auto& f : objectives) truncated.push_back(std::make_shared<TruncatedOracle>(f, gamma));

  ConvexDecomposition d = decomposition_from_trace(result.trace, u);
  FractionalPoint y(result.trace.points.back());
  for (int attempt = 0; attempt < cfg.rounding_repeats; ++attempt) {
    ElementSet s = swap_round(d, u, substream(cfg.seed, static_cast<std::uint64_t>(attempt)));
    bool ok = true;
    for (const auto& f : truncated) {
      if (f->eval(s) < (1.0 - epsilon) * gamma - 1e-12) {
        ok = false;
        break;
      }
    }
    ++result.draws_used;
    if (ok) {
      UnionMembership membership = union_is_independent(u, s);
      if (!membership.independent) {
        throw std::runtime_error("swap rounding produced a dependent set");
      }
      result.accepted = true;
      result.set = s;
      result.witness = std::move(membership.witness);
      return result;
    }
  }
  return result;
}

BiCriteriaSolution robust_continuous_solve(const RobustInstance& instance,
                                           const ContinuousConfig& cfg) {
  instance.validate();
  const auto* matroid = std::get_if<MatroidPtr>(&instance.constraint);
  if (!matroid) throw std::invalid_argument("robust_continuous_solve needs a matroid constraint");
  auto start = std::chrono::steady_clock::now();
  std::int64_t calls0 = 0;
  for (const auto& f : instance.objectives) calls0 += f->call_count();

  const double eps_half = instance.epsilon / 2.0;
  GammaCandidates candidates = gamma_candidates(instance.objectives, instance.epsilon);

  auto finish = [&](BiCriteriaSolution sol) {
    std::int64_t calls1 = 0;
    for (const auto& f : instance.objectives) calls1 += f->call_count();
    sol.oracle_calls = calls1 - calls0;
    sol.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return sol;
  };

  auto to_solution = [&](const DecisionResult& dec, double gamma) {
    BiCriteriaSolution sol;
    sol.layers = dec.witness;
    sol.union_set = dec.set;
    sol.gamma_used = gamma;
    sol.ell = continuous_layer_count(static_cast<int>(instance.objectives.size()), eps_half,
                                     cfg.c);
    sol.values.resize(static_cast<Eigen::Index>(instance.objectives.size()));
    for (std::size_t i = 0; i < instance.objectives.size(); ++i) {
      sol.values[static_cast<Eigen::Index>(i)] = instance.objectives[i]->eval(dec.set);
    }
    return sol;
  };

  const std::vector<double>& vals = candidates.values;
  // Binary search over the ladder: acceptance holds (with amplified
  // probability) for every gamma <= OPT, so the accepting indices form a
  // suffix up to the vanishing rounding-failure probability.
  std::size_t lo = 0, hi = vals.size() - 1;
  auto last = decision_solve(instance.objectives, vals[hi], eps_half, *matroid, cfg);
  if (!last.accepted) {
    BiCriteriaSolution sol = robust_offline_solve(instance);
    sol.fallback = true;
    return finish(std::move(sol));
  }
  DecisionResult best = std::move(last);
  double best_gamma = vals[hi];
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto dec = decision_solve(instance.objectives, vals[mid], eps_half, *matroid, cfg);
    if (dec.accepted) {
      hi = mid;
      best = std::move(dec);
      best_gamma = vals[mid];
    } else {
      lo = mid + 1;
    }
  }
  return finish(to_solution(best, best_gamma));
}

}  // namespace robsub
