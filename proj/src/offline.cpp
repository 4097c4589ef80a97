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

#include "robsub/offline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "robsub/functions.hpp"

namespace robsub {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Eigen::VectorXd evaluate_all(const std::vector<OraclePtr>& objectives, const ElementSet& s) {
  Eigen::VectorXd values(static_cast<Eigen::Index>(objectives.size()));
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    values[static_cast<Eigen::Index>(i)] = objectives[i]->eval(s);
  }
  return values;
}

std::int64_t total_calls(const std::vector<OraclePtr>& objectives) {
  std::int64_t total = 0;
  for (const auto& f : objectives) total += f->call_count();
  return total;
}

struct HeapEntry {
  double key;
  int elem;
  bool operator<(const HeapEntry& o) const {
    if (key != o.key) return key < o.key;
    return elem > o.elem;  // smaller index wins ties
  }
};

struct LayeredResult {
  std::vector<ElementSet> layers;
  ElementSet union_set;
};

// Shared engine behind Alg. 1 and Alg. 3. Runs ell rounds; within a round,
// candidates are ranked by marginal value on the running union divided by
// `divisor` (1 for matroid greedy, c_e for bang-per-buck).
//
// feasible(layer, e): may e extend the current layer (matroid mode; always
//   true in knapsack mode). Must be monotone: once false for a layer it stays
//   false as the layer grows.
// admit(layer, e): final acceptance (knapsack's relaxed budget). On rejection
//   the element is still dropped from the round's pool.
// pool(e): whether e participates at all (knapsack drops c_e > capacity).
LayeredResult run_layered_greedy(const SubmodularOracle& f, int ell, bool lazy,
                                 const std::function<bool(const ElementSet&, int)>& feasible,
                                 const std::function<bool(const ElementSet&, int)>& admit,
                                 const std::function<bool(int)>& pool,
                                 const std::function<double(int)>& divisor) {
  const int n = f.n();
  LayeredResult result;
  result.union_set = ElementSet(n);
  ElementSet& union_set = result.union_set;
  double f_union = f.eval(union_set);

  // Marginal upper bounds persist across rounds: the union only grows, so
  // submodularity keeps every cached bound valid.
  std::vector<double> bound(n, std::numeric_limits<double>::infinity());
  std::vector<long long> stamp(n, -1);
  long long version = 0;

  for (int round = 0; round < ell; ++round) {
    ElementSet layer(n);
    if (lazy) {
      std::priority_queue<HeapEntry> heap;
      for (int e = 0; e < n; ++e) {
        if (pool(e)) heap.push({bound[e], e});
      }
      while (!heap.empty()) {
        HeapEntry top = heap.top();
        heap.pop();
        if (layer.contains(top.elem)) continue;
        if (!feasible(layer, top.elem)) continue;  // gone for this round
        if (stamp[top.elem] != version) {
          double gain = f.eval(union_set.with(top.elem)) - f_union;
          bound[top.elem] = gain / divisor(top.elem);
          stamp[top.elem] = version;
          heap.push({bound[top.elem], top.elem});
          continue;
        }
        // Fresh top: any rival with an equal bound has a larger index, and
        // true values never exceed bounds, so this matches the plain scan.
        if (admit(layer, top.elem)) {
          layer.insert(top.elem);
          if (union_set.insert(top.elem)) {
            f_union = f.eval(union_set);
            ++version;
          }
        }
      }
    } else {
      ElementSet dropped(n);  // scanned-and-rejected this round (Alg. 3's V <- V - e*)
      while (true) {
        int best = -1;
        double best_key = -std::numeric_limits<double>::infinity();
        for (int e = 0; e < n; ++e) {
          if (!pool(e) || layer.contains(e) || dropped.contains(e) || !feasible(layer, e)) {
            continue;
          }
          double key = (f.eval(union_set.with(e)) - f_union) / divisor(e);
          if (key > best_key) {
            best_key = key;
            best = e;
          }
        }
        if (best < 0) break;
        if (admit(layer, best)) {
          layer.insert(best);
          if (union_set.insert(best)) {
            f_union = f.eval(union_set);
            ++version;
          }
        } else {
          dropped.insert(best);
        }
      }
    }
    result.layers.push_back(layer);
  }
  return result;
}

}  // namespace

int ceil_guarded(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

int robust_layer_count(int k, double epsilon) {
  return ceil_guarded(std::log2(2.0 * k / epsilon));
}

int knapsack_layer_count(int k, double epsilon) {
  return ceil_guarded(std::log(2.0 * k / epsilon));
}

int intersection_layer_count(int k, double epsilon, int r) {
  return ceil_guarded(std::log(2.0 * k / epsilon) /
                      std::log((static_cast<double>(r) + 1.0) / static_cast<double>(r)));
}

BiCriteriaSolution extended_greedy(const SubmodularOracle& f, const Matroid& m, int ell,
                                   const GreedyOptions& options) {
  if (ell < 1) throw std::invalid_argument("extended greedy needs ell >= 1");
  if (f.n() != m.n()) throw std::invalid_argument("oracle and matroid ground sets differ");
  auto start = Clock::now();
  std::int64_t calls0 = f.call_count();

  LayeredResult greedy = run_layered_greedy(
      f, ell, options.lazy,
      [&m](const ElementSet& layer, int e) { return m.is_independent(layer.with(e)); },
      [](const ElementSet&, int) { return true; }, [](int) { return true; },
      [](int) { return 1.0; });

  BiCriteriaSolution out;
  out.layers = std::move(greedy.layers);
  out.union_set = greedy.union_set;
  out.values = Eigen::VectorXd::Constant(1, f.eval(out.union_set));
  out.ell = ell;
  out.oracle_calls = f.call_count() - calls0;
  out.wall_time_ms = elapsed_ms(start);
  return out;
}

BiCriteriaSolution extended_greedy_intersection(const SubmodularOracle& f,
                                                const std::vector<MatroidPtr>& matroids, int ell,
                                                const GreedyOptions& options) {
  if (matroids.empty()) throw std::invalid_argument("intersection needs r >= 1 matroids");
  if (ell < 1) throw std::invalid_argument("extended greedy needs ell >= 1");
  for (const auto& m : matroids) {
    if (!m || m->n() != f.n()) throw std::invalid_argument("matroid ground sets must match");
  }
  auto start = Clock::now();
  std::int64_t calls0 = f.call_count();

  LayeredResult greedy = run_layered_greedy(
      f, ell, options.lazy,
      [&matroids](const ElementSet& layer, int e) {
        ElementSet candidate = layer.with(e);
        for (const auto& m : matroids) {
          if (!m->is_independent(candidate)) return false;
        }
        return true;
      },
      [](const ElementSet&, int) { return true; }, [](int) { return true; },
      [](int) { return 1.0; });

  BiCriteriaSolution out;
  out.layers = std::move(greedy.layers);
  out.union_set = greedy.union_set;
  out.values = Eigen::VectorXd::Constant(1, f.eval(out.union_set));
  out.ell = ell;
  out.oracle_calls = f.call_count() - calls0;
  out.wall_time_ms = elapsed_ms(start);
  return out;
}

BiCriteriaSolution extended_bang_per_buck(const SubmodularOracle& g, const KnapsackConstraint& k,
                                          int ell, const GreedyOptions& options) {
  if (ell < 1) throw std::invalid_argument("bang-per-buck needs ell >= 1");
  if (k.costs.size() != g.n()) throw std::invalid_argument("knapsack costs size mismatch");
  if ((k.costs.array() <= 0).any()) throw std::invalid_argument("knapsack costs must be positive");
  auto start = Clock::now();
  std::int64_t calls0 = g.call_count();
  const double relaxed = 2.0 * k.capacity;

  // Elements heavier than the capacity can never sit in a feasible set of K,
  // so they are not considered at all.
  LayeredResult greedy = run_layered_greedy(
      g, ell, options.lazy, [](const ElementSet&, int) { return true; },
      [&k, relaxed](const ElementSet& layer, int e) {
        return k.cost(layer) + k.costs[e] <= relaxed + 1e-12;
      },
      [&k](int e) { return k.costs[e] <= k.capacity + 1e-12; },
      [&k](int e) { return k.costs[e]; });

  BiCriteriaSolution out;
  out.layers = std::move(greedy.layers);
  out.union_set = greedy.union_set;
  out.values = Eigen::VectorXd::Constant(1, g.eval(out.union_set));
  out.ell = ell;
  out.oracle_calls = g.call_count() - calls0;
  out.wall_time_ms = elapsed_ms(start);
  for (const auto& layer : out.layers) out.layer_costs.push_back(k.cost(layer));
  out.union_cost = k.cost(out.union_set);
  return out;
}

GammaCandidates gamma_candidates(const std::vector<OraclePtr>& objectives, double epsilon) {
  if (objectives.empty()) throw std::invalid_argument("gamma candidates need objectives");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  const int n = objectives.front()->n();
  const double shrink = 1.0 - epsilon / 2.0;
  const int j_max = std::max(0, ceil_guarded(std::log(1.0 / n) / std::log(shrink)));

  GammaCandidates out;
  for (const auto& f : objectives) {
    for (int e = 0; e < n; ++e) {
      double v = f->eval(ElementSet(n).with(e));
      if (v <= 0.0) continue;
      double gamma = static_cast<double>(n) * v;
      for (int j = 0; j <= j_max; ++j) {
        out.values.push_back(gamma);
        gamma *= shrink;
      }
      out.raw_count += static_cast<std::size_t>(j_max) + 1;
    }
  }
  if (out.values.empty()) {
    out.values.push_back(0.0);  // OPT = 0 sentinel
    out.raw_count = 1;
    return out;
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

namespace {

// One certification run of the Theorem-1 reduction at a fixed gamma: extended
// greedy on g, then check min_i f_i(union) >= (1 - eps/2) gamma.
struct SweepContext {
  const std::vector<OraclePtr>& objectives;
  double epsilon;
  int ell;
  const GreedyOptions& greedy;
  std::function<BiCriteriaSolution(const SubmodularOracle&, int)> run_layers;

  struct Attempt {
    BiCriteriaSolution solution;
    bool certified = false;
  };

  Attempt attempt(double gamma) const {
    Attempt a;
    if (gamma <= 0.0) {
      // All-zero objectives: the empty solution is optimal.
      const int n = objectives.front()->n();
      a.solution.layers.assign(ell, ElementSet(n));
      a.solution.union_set = ElementSet(n);
      a.solution.values = evaluate_all(objectives, a.solution.union_set);
      a.solution.ell = ell;
      a.certified = true;
      return a;
    }
    auto g = build_robust_average(objectives, gamma);
    a.solution = run_layers(*g, ell);
    a.solution.values = evaluate_all(objectives, a.solution.union_set);
    a.solution.gamma_used = gamma;
    a.certified = a.solution.values.minCoeff() >= (1.0 - epsilon / 2.0) * gamma - 1e-9;
    return a;
  }
};

BiCriteriaSolution gamma_sweep(const SweepContext& ctx, const GammaCandidates& candidates,
                               GammaSearch search) {
  const std::vector<double>& vals = candidates.values;

  if (search == GammaSearch::kDescending || vals.size() <= 2) {
    SweepContext::Attempt best;
    double best_min = -std::numeric_limits<double>::infinity();
    for (double gamma : vals) {
      auto a = ctx.attempt(gamma);
      if (a.certified) return std::move(a.solution);
      double mv = a.solution.min_value();
      if (mv > best_min) {
        best_min = mv;
        best = std::move(a);
      }
    }
    // Unreachable for monotone submodular inputs: the smallest candidate is
    // at most OPT and always certifies. Kept for robustness on bad inputs.
    return std::move(best.solution);
  }

  // Binary search. Certification holds for every candidate <= OPT, so the
  // true indices form a suffix (plus possibly stray accepts above OPT, which
  // only improve the answer). The search lands at an index no later than the
  // first suffix index, hence at a gamma >= the best candidate below OPT.
  std::size_t lo = 0, hi = vals.size() - 1;
  auto last = ctx.attempt(vals[hi]);
  if (!last.certified) {
    return gamma_sweep(ctx, candidates, GammaSearch::kDescending);
  }
  SweepContext::Attempt at_hi = std::move(last);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto a = ctx.attempt(vals[mid]);
    if (a.certified) {
      hi = mid;
      at_hi = std::move(a);
    } else {
      lo = mid + 1;
    }
  }
  return std::move(at_hi.solution);
}

BiCriteriaSolution finish_robust(BiCriteriaSolution sol, const std::vector<OraclePtr>& objectives,
                                 std::int64_t calls0, Clock::time_point start) {
  sol.oracle_calls = total_calls(objectives) - calls0;
  sol.wall_time_ms = elapsed_ms(start);
  return sol;
}

}  // namespace

BiCriteriaSolution robust_offline_solve(const RobustInstance& instance,
                                        const RobustSolveOptions& options) {
  instance.validate();
  const auto* matroid = std::get_if<MatroidPtr>(&instance.constraint);
  if (!matroid) throw std::invalid_argument("robust_offline_solve needs a matroid constraint");
  auto start = Clock::now();
  std::int64_t calls0 = total_calls(instance.objectives);

  const int k = static_cast<int>(instance.objectives.size());
  const int ell = robust_layer_count(k, instance.epsilon);
  SweepContext ctx{instance.objectives, instance.epsilon, ell, options.greedy,
                   [&](const SubmodularOracle& g, int layers) {
                     return extended_greedy(g, **matroid, layers, options.greedy);
                   }};
  auto candidates = gamma_candidates(instance.objectives, instance.epsilon);
  return finish_robust(gamma_sweep(ctx, candidates, options.search), instance.objectives, calls0,
                       start);
}

BiCriteriaSolution robust_knapsack_solve(const RobustInstance& instance,
                                         const RobustSolveOptions& options) {
  instance.validate();
  const auto* knapsack = std::get_if<KnapsackConstraint>(&instance.constraint);
  if (!knapsack) throw std::invalid_argument("robust_knapsack_solve needs a knapsack constraint");
  auto start = Clock::now();
  std::int64_t calls0 = total_calls(instance.objectives);

  const int k = static_cast<int>(instance.objectives.size());
  const int ell = knapsack_layer_count(k, instance.epsilon);
  SweepContext ctx{instance.objectives, instance.epsilon, ell, options.greedy,
                   [&](const SubmodularOracle& g, int layers) {
                     return extended_bang_per_buck(g, *knapsack, layers, options.greedy);
                   }};
  auto candidates = gamma_candidates(instance.objectives, instance.epsilon);
  auto sol = gamma_sweep(ctx, candidates, options.search);
  if (sol.layer_costs.empty() && !sol.layers.empty()) {
    for (const auto& layer : sol.layers) sol.layer_costs.push_back(knapsack->cost(layer));
    sol.union_cost = knapsack->cost(sol.union_set);
  }
  return finish_robust(std::move(sol), instance.objectives, calls0, start);
}

BiCriteriaSolution robust_intersection_solve(const RobustInstance& instance,
                                             const RobustSolveOptions& options) {
  instance.validate();
  const auto* matroids = std::get_if<std::vector<MatroidPtr>>(&instance.constraint);
  if (!matroids || matroids->empty()) {
    throw std::invalid_argument("robust_intersection_solve needs r >= 1 matroids");
  }
  auto start = Clock::now();
  std::int64_t calls0 = total_calls(instance.objectives);

  const int k = static_cast<int>(instance.objectives.size());
  const int r = static_cast<int>(matroids->size());
  const int ell = intersection_layer_count(k, instance.epsilon, r);
  SweepContext ctx{instance.objectives, instance.epsilon, ell, options.greedy,
                   [&](const SubmodularOracle& g, int layers) {
                     return extended_greedy_intersection(g, *matroids, layers, options.greedy);
                   }};
  auto candidates = gamma_candidates(instance.objectives, instance.epsilon);
  return finish_robust(gamma_sweep(ctx, candidates, options.search), instance.objectives, calls0,
                       start);
}

BiCriteriaSolution distributionally_robust_solve(const std::vector<OraclePtr>& objectives,
                                                 const std::vector<Eigen::VectorXd>& vertices,
                                                 const MatroidPtr& matroid, double epsilon,
                                                 const RobustSolveOptions& options) {
  if (vertices.empty()) throw std::invalid_argument("DRO needs at least one vertex of Q");
  if (!matroid) throw std::invalid_argument("DRO needs a matroid");
  std::vector<OraclePtr> mixed;
  mixed.reserve(vertices.size());
  for (const auto& q : vertices) mixed.push_back(mix(q, objectives));

  RobustInstance reduced;
  reduced.ground = matroid->ground();
  reduced.objectives = std::move(mixed);
  reduced.constraint = matroid;
  reduced.epsilon = epsilon;
  return robust_offline_solve(reduced, options);
}

namespace {

struct BruteForceState {
  explicit BruteForceState(const std::vector<OraclePtr>& objs) : objectives(objs) {}
  const std::vector<OraclePtr>& objectives;
  double best = -std::numeric_limits<double>::infinity();
  ElementSet best_set;

  void consider(const ElementSet& s) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& f : objectives) worst = std::min(worst, f->eval(s));
    if (worst > best) {  // strict: DFS order visits lexicographically
      best = worst;
      best_set = s;
    }
  }
};

template <typename Feasible>
void enumerate_feasible(int n, int start, ElementSet& current, const Feasible& feasible,
                        BruteForceState& state) {
  state.consider(current);
  for (int e = start; e < n; ++e) {
    ElementSet next = current.with(e);
    if (!feasible(next)) continue;
    enumerate_feasible(n, e + 1, next, feasible, state);
  }
}

template <typename Feasible>
void enumerate_feasible_inplace(int n, const Feasible& feasible, BruteForceState& state) {
  ElementSet empty(n);
  enumerate_feasible(n, 0, empty, feasible, state);
}

}  // namespace

BruteForceResult brute_force_opt(const std::vector<OraclePtr>& objectives,
                                 const Constraint& constraint) {
  if (objectives.empty()) throw std::invalid_argument("brute force needs objectives");
  const int n = objectives.front()->n();

  if (const auto* dro = std::get_if<DistributionallyRobustConstraint>(&constraint)) {
    std::vector<OraclePtr> mixed;
    for (const auto& q : dro->vertices) mixed.push_back(mix(q, objectives));
    return brute_force_opt(mixed, Constraint{dro->matroid});
  }

  BruteForceState state(objectives);
  state.best_set = ElementSet(n);

  if (const auto* matroid = std::get_if<MatroidPtr>(&constraint)) {
    if (n > 20) throw SizeLimitError("brute force limited to n <= 20 for matroid constraints");
    enumerate_feasible_inplace(
        n, [&](const ElementSet& s) { return (*matroid)->is_independent(s); }, state);
  } else if (const auto* matroids = std::get_if<std::vector<MatroidPtr>>(&constraint)) {
    if (n > 20) throw SizeLimitError("brute force limited to n <= 20 for matroid constraints");
    enumerate_feasible_inplace(
        n,
        [&](const ElementSet& s) {
          for (const auto& m : *matroids) {
            if (!m->is_independent(s)) return false;
          }
          return true;
        },
        state);
  } else if (const auto* knapsack = std::get_if<KnapsackConstraint>(&constraint)) {
    if (n > 16) throw SizeLimitError("brute force limited to n <= 16 for knapsack constraints");
    enumerate_feasible_inplace(n, [&](const ElementSet& s) { return knapsack->feasible(s); },
                               state);
  } else {
    throw std::invalid_argument("unsupported constraint for brute force");
  }

  return {state.best, state.best_set};
}

}  // namespace robsub
