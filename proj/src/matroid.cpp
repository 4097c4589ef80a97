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

#include "robsub/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace robsub {

UniformMatroid::UniformMatroid(GroundSet ground, int budget)
    : Matroid(std::move(ground)), budget_(budget) {
  if (budget_ < 0) throw std::invalid_argument("uniform matroid budget must be >= 0");
}

std::optional<PartitionStructure> UniformMatroid::partition_structure() const {
  PartitionStructure ps;
  ps.parts.emplace_back(n());
  std::iota(ps.parts[0].begin(), ps.parts[0].end(), 0);
  ps.budgets.push_back(budget_);
  return ps;
}

PartitionMatroid::PartitionMatroid(GroundSet ground, std::vector<std::vector<int>> parts,
                                   std::vector<int> budgets)
    : Matroid(std::move(ground)), parts_(std::move(parts)), budgets_(std::move(budgets)) {
  if (parts_.size() != budgets_.size()) {
    throw std::invalid_argument("partition matroid: one budget per part required");
  }
  if (parts_.empty()) throw std::invalid_argument("partition matroid needs at least one part");
  part_of_.assign(n(), -1);
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (budgets_[j] < 0) throw std::invalid_argument("partition budgets must be >= 0");
    for (int e : parts_[j]) {
      if (e < 0 || e >= n()) throw std::invalid_argument("partition: element out of range");
      if (part_of_[e] != -1) throw std::invalid_argument("partition parts must be disjoint");
      part_of_[e] = static_cast<int>(j);
    }
  }
  for (int e = 0; e < n(); ++e) {
    if (part_of_[e] == -1) throw std::invalid_argument("partition parts must cover the ground set");
  }
}

bool PartitionMatroid::is_independent(const ElementSet& s) const {
  std::vector<int> counts(budgets_.size(), 0);
  bool ok = true;
  s.for_each([&](int e) {
    if (++counts[part_of_[e]] > budgets_[part_of_[e]]) ok = false;
  });
  return ok;
}

std::optional<PartitionStructure> PartitionMatroid::partition_structure() const {
  return PartitionStructure{parts_, budgets_};
}

MatroidAxiomReport check_matroid_axioms(int n, const std::vector<ElementSet>& family) {
  if (n > 12) throw SizeLimitError("matroid axiom check limited to n <= 12");
  std::unordered_set<std::uint64_t> masks;
  for (const auto& s : family) {
    if (s.ground_size() != n) throw std::invalid_argument("family member on wrong ground set");
    masks.insert(s.mask());
  }
  if (!masks.count(0)) {
    return {false, "empty set not in the family"};
  }
  for (std::uint64_t m : masks) {
    for (std::uint64_t sub = m; sub != 0; sub = (sub - 1) & m) {
      if (!masks.count(sub & m)) {
        return {false, "downward closure fails: " + ElementSet::from_mask(n, m).to_string() +
                           " independent but subset " +
                           ElementSet::from_mask(n, sub & m).to_string() + " is not"};
      }
    }
  }
  for (std::uint64_t a : masks) {
    for (std::uint64_t b : masks) {
      if (std::popcount(a) >= std::popcount(b)) continue;
      bool extended = false;
      for (std::uint64_t diff = b & ~a; diff != 0; diff &= diff - 1) {
        std::uint64_t bit = diff & (~diff + 1);
        if (masks.count(a | bit)) {
          extended = true;
          break;
        }
      }
      if (!extended) {
        return {false, "exchange fails between A=" + ElementSet::from_mask(n, a).to_string() +
                           " and B=" + ElementSet::from_mask(n, b).to_string()};
      }
    }
  }
  return {true, ""};
}

ExplicitMatroid::ExplicitMatroid(GroundSet ground, const std::vector<ElementSet>& family)
    : Matroid(std::move(ground)) {
  MatroidAxiomReport report = check_matroid_axioms(n(), family);
  if (!report.ok) {
    throw std::invalid_argument("explicit family is not a matroid: " + report.failure);
  }
  for (const auto& s : family) masks_.insert(s.mask());
}

bool ExplicitMatroid::is_independent(const ElementSet& s) const {
  return masks_.count(s.mask()) > 0;
}

int rank(const Matroid& m, const ElementSet& s) {
  ElementSet acc(m.n());
  s.for_each([&](int e) {
    ElementSet candidate = acc.with(e);
    if (m.is_independent(candidate)) acc = std::move(candidate);
  });
  return acc.size();
}

ElementSet max_weight_independent_set(const Matroid& m, const Eigen::VectorXd& weights) {
  if (weights.size() != m.n()) throw std::invalid_argument("weight vector size mismatch");
  std::vector<int> order(m.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  ElementSet acc(m.n());
  for (int e : order) {
    if (weights[e] <= 0) break;
    ElementSet candidate = acc.with(e);
    if (m.is_independent(candidate)) acc = std::move(candidate);
  }
  return acc;
}

bool is_basis(const Matroid& m, const ElementSet& s) {
  if (!m.is_independent(s)) return false;
  for (int e = 0; e < m.n(); ++e) {
    if (!s.contains(e) && m.is_independent(s.with(e))) return false;
  }
  return true;
}

}  // namespace robsub
