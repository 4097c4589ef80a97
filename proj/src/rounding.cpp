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

#include "robsub/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "robsub/simplex.hpp"

namespace robsub {

namespace {

constexpr double kTol = 1e-9;

double frac(double z) { return z - std::floor(z); }

}  // namespace

std::vector<std::pair<double, ElementSet>> interval_decompose(const Eigen::VectorXd& x,
                                                              const PartitionStructure& ps) {
  const int n = static_cast<int>(x.size());
  for (int e = 0; e < n; ++e) {
    if (x[e] < -kTol || x[e] > 1.0 + kTol) {
      throw PolytopeMembershipError("coordinate outside [0,1]", ElementSet(n).with(e),
                                    ElementSet(n).with(e), x[e], 1.0);
    }
  }

  // Per part: elements with positive mass laid out as consecutive intervals.
  struct PartLayout {
    std::vector<int> elems;
    std::vector<double> cum;  // cum[i] = start of elems[i]; cum.back() = total
  };
  std::vector<PartLayout> layouts;
  std::vector<double> cuts = {0.0};
  for (std::size_t j = 0; j < ps.parts.size(); ++j) {
    PartLayout layout;
    double prefix = 0.0;
    for (int e : ps.parts[j]) {
      double mass = std::clamp(x[e], 0.0, 1.0);
      if (mass <= 0.0) continue;
      layout.elems.push_back(e);
      layout.cum.push_back(prefix);
      cuts.push_back(frac(prefix));
      prefix += mass;
      cuts.push_back(frac(prefix));
    }
    layout.cum.push_back(prefix);
    if (prefix > static_cast<double>(ps.budgets[j]) + kTol) {
      ElementSet part_set(n);
      for (int e : ps.parts[j]) part_set.insert(e);
      throw PolytopeMembershipError("part mass exceeds its scaled budget", part_set, part_set,
                                    prefix, static_cast<double>(ps.budgets[j]));
    }
    layouts.push_back(std::move(layout));
  }

  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(1.0);

  std::map<std::vector<int>, double> merged;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    if (width <= 1e-15) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    ElementSet atom(n);
    for (const auto& layout : layouts) {
      const double total = layout.cum.back();
      for (double probe = mid; probe < total - 1e-15; probe += 1.0) {
        auto it = std::upper_bound(layout.cum.begin(), layout.cum.end() - 1, probe);
        int idx = static_cast<int>(it - layout.cum.begin()) - 1;
        atom.insert(layout.elems[idx]);
      }
    }
    merged[atom.indices()] += width;
  }

  std::vector<std::pair<double, ElementSet>> atoms;
  for (const auto& [elems, weight] : merged) {
    atoms.emplace_back(weight, ElementSet::of(n, elems));
  }
  return atoms;
}

namespace {

// Exact rank of the union matroid by the formula min_{A <= S} |S\A| + ell r(A);
// used to surface the violated inequality on membership failures.
std::pair<long long, ElementSet> union_rank_with_argmin(const UnionMatroid& u,
                                                        const ElementSet& s) {
  std::vector<int> elems = s.indices();
  const int m = static_cast<int>(elems.size());
  long long best = m;
  ElementSet best_a(u.n());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    ElementSet a(u.n());
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) a.insert(elems[i]);
    }
    long long bound = static_cast<long long>(m - a.size()) +
                      static_cast<long long>(u.ell()) * rank(*u.base(), a);
    if (bound < best) {
      best = bound;
      best_a = a;
    }
  }
  return {best, best_a};
}

ConvexDecomposition decompose_general(const FractionalPoint& y, const UnionMatroid& u) {
  const int n = u.n();
  if (n > 12) {
    throw SizeLimitError("generic polytope decomposition limited to n <= 12");
  }

  // Exact membership first: y(S) <= r_{M_ell}(S) for all S.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s = ElementSet::from_mask(n, mask);
    double ys = 0.0;
    s.for_each([&](int e) { ys += y[e]; });
    auto [bound, arg_a] = union_rank_with_argmin(u, s);
    if (ys > static_cast<double>(bound) + kTol) {
      throw PolytopeMembershipError("rank inequality violated", s, arg_a, ys,
                                    static_cast<double>(bound));
    }
  }

  // Feasibility LP over the enumerated independent sets of M_ell.
  std::vector<ElementSet> sets;
  {
    std::vector<ElementSet> stack{ElementSet(n)};
    // DFS over independent sets (downward closed), ascending elements.
    std::function<void(ElementSet, int)> dfs = [&](ElementSet current, int start) {
      sets.push_back(current);
      for (int e = start; e < n; ++e) {
        ElementSet next = current.with(e);
        if (u.is_independent(next)) dfs(next, e + 1);
      }
    };
    dfs(ElementSet(n), 0);
  }

  const int vars = static_cast<int>(sets.size());
  const int rows = 2 * (n + 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, vars);
  Eigen::VectorXd b(rows);
  for (int e = 0; e < n; ++e) {
    for (int v = 0; v < vars; ++v) {
      double ind = sets[v].contains(e) ? 1.0 : 0.0;
      a(2 * e, v) = ind;
      a(2 * e + 1, v) = -ind;
    }
    b[2 * e] = y[e];
    b[2 * e + 1] = -y[e];
  }
  for (int v = 0; v < vars; ++v) {
    a(2 * n, v) = 1.0;
    a(2 * n + 1, v) = -1.0;
  }
  b[2 * n] = 1.0;
  b[2 * n + 1] = -1.0;

  LpResult lp = solve_lp_max(Eigen::VectorXd::Zero(vars), a, b);
  if (lp.status != LpStatus::kOptimal) {
    throw std::runtime_error("decomposition LP unexpectedly infeasible despite membership");
  }
  ConvexDecomposition d;
  d.point = y.coords();
  for (int v = 0; v < vars; ++v) {
    if (lp.x[v] > 1e-12) d.atoms.emplace_back(lp.x[v], sets[v]);
  }
  return d;
}

}  // namespace

ConvexDecomposition decompose(const FractionalPoint& y, const UnionMatroid& u) {
  if (y.n() != u.n()) throw std::invalid_argument("decompose: dimension mismatch");
  if (auto ps = u.partition_structure()) {
    ConvexDecomposition d;
    d.point = y.coords();
    d.atoms = interval_decompose(y.coords(), *ps);
    return d;
  }
  return decompose_general(y, u);
}

void validate_decomposition(const ConvexDecomposition& d, const UnionMatroid& u) {
  double total = 0.0;
  Eigen::VectorXd recomposed = Eigen::VectorXd::Zero(u.n());
  for (const auto& [weight, atom] : d.atoms) {
    if (weight <= 0) throw std::invalid_argument("decomposition atom with nonpositive weight");
    if (!u.is_independent(atom)) {
      throw std::invalid_argument("decomposition atom not independent in the union matroid");
    }
    total += weight;
    atom.for_each([&](int e) { recomposed[e] += weight; });
  }
  if (std::abs(total - 1.0) > kTol) {
    throw std::invalid_argument("decomposition weights must sum to 1");
  }
  if ((recomposed - d.point).cwiseAbs().maxCoeff() > kTol) {
    throw std::invalid_argument("decomposition does not recompose the point");
  }
}

namespace {

struct PaddedAtom {
  ElementSet real;
  int dummies = 0;
  double weight = 0.0;
};

// Elementary-exchange merge of two equal-size padded atoms. Dummies are
// anonymous free elements padding each atom up to the common rank; swapping
// one in or out only adjusts the count.
PaddedAtom merge_atoms(PaddedAtom a, PaddedAtom b, const UnionMatroid& u, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (a.real != b.real) {
    ElementSet a_only = a.real.difference(b.real);
    ElementSet b_only = b.real.difference(a.real);

    int e1 = -1;
    bool e1_dummy = a_only.empty();  // then |a.real| < |b.real| and a has spare dummies
    if (!e1_dummy) e1 = a_only.indices().front();

    int e2 = -1;
    bool e2_dummy = false;
    if (e1_dummy) {
      for (int candidate : b_only.indices()) {
        if (u.is_independent(a.real.with(candidate))) {
          e2 = candidate;
          break;
        }
      }
    } else {
      for (int candidate : b_only.indices()) {
        if (u.is_independent(a.real.without(e1).with(candidate)) &&
            u.is_independent(b.real.without(candidate).with(e1))) {
          e2 = candidate;
          break;
        }
      }
      if (e2 < 0 && b.dummies > 0 && u.is_independent(b.real.with(e1))) e2_dummy = true;
    }
    if (e2 < 0 && !e2_dummy) {
      throw std::runtime_error("swap rounding: no exchange partner for element " +
                               std::to_string(e1) + " between " + a.real.to_string() + " and " +
                               b.real.to_string());
    }

    if (unit(rng) < a.weight / (a.weight + b.weight)) {
      // A's element survives; B adapts.
      if (e2_dummy) {
        --b.dummies;
      } else {
        b.real.erase(e2);
      }
      if (e1_dummy) {
        ++b.dummies;
      } else {
        b.real.insert(e1);
      }
    } else {
      if (e1_dummy) {
        --a.dummies;
      } else {
        a.real.erase(e1);
      }
      if (e2_dummy) {
        ++a.dummies;
      } else {
        a.real.insert(e2);
      }
    }
  }
  a.weight += b.weight;
  return a;
}

}  // namespace

ElementSet swap_round(const ConvexDecomposition& d, const UnionMatroid& u, std::uint64_t seed) {
  if (d.atoms.empty()) throw std::invalid_argument("swap rounding needs at least one atom");
  if (d.atoms.size() == 1) return d.atoms.front().second;

  int target = 0;
  for (const auto& [weight, atom] : d.atoms) target = std::max(target, atom.size());

  std::mt19937_64 rng(seed);
  PaddedAtom current{d.atoms[0].second, target - d.atoms[0].second.size(), d.atoms[0].first};
  for (std::size_t j = 1; j < d.atoms.size(); ++j) {
    PaddedAtom next{d.atoms[j].second, target - d.atoms[j].second.size(), d.atoms[j].first};
    current = merge_atoms(std::move(current), std::move(next), u, rng);
  }
  return current.real;
}

RoundCertifyResult round_and_certify(const FractionalPoint& y, const UnionMatroid& u,
                                     const std::vector<OraclePtr>& truncated_objectives,
                                     double gamma, double epsilon, std::uint64_t seed) {
  if (truncated_objectives.empty()) {
    throw std::invalid_argument("round_and_certify needs objectives");
  }
  ConvexDecomposition d = decompose(y, u);
  RoundCertifyResult result;
  result.set = swap_round(d, u, seed);
  result.truncated_values.resize(static_cast<Eigen::Index>(truncated_objectives.size()));
  bool ok = true;
  for (std::size_t i = 0; i < truncated_objectives.size(); ++i) {
    double v = truncated_objectives[i]->eval(result.set);
    result.truncated_values[static_cast<Eigen::Index>(i)] = v;
    if (v < (1.0 - epsilon) * gamma - 1e-12) ok = false;
  }
  result.accepted = ok;
  UnionMembership membership = union_is_independent(u, result.set);
  if (!membership.independent) {
    throw std::runtime_error("swap rounding produced a dependent set");
  }
  result.witness = std::move(membership.witness);
  return result;
}

}  // namespace robsub
