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

#ifndef ROBSUB_MATROID_HPP_
#define ROBSUB_MATROID_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "robsub/oracle.hpp"

namespace robsub {

// Explicit part/budget view exposed by matroids whose polytope has a compact
// inequality description (uniform and partition matroids).
struct PartitionStructure {
  std::vector<std::vector<int>> parts;
  std::vector<int> budgets;
};

/// Matroid over {0..n-1} accessed through an independence oracle. Instances
/// are immutable after construction; all queries are re-entrant.
class Matroid {
 public:
  explicit Matroid(GroundSet ground) : ground_(std::move(ground)) {}
  virtual ~Matroid() = default;

  Matroid(const Matroid&) = delete;
  Matroid& operator=(const Matroid&) = delete;

  virtual bool is_independent(const ElementSet& s) const = 0;

  // Non-null only for matroids with an explicit part/budget polytope.
  virtual std::optional<PartitionStructure> partition_structure() const { return std::nullopt; }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }

 private:
  GroundSet ground_;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(GroundSet ground, int budget);
  int budget() const { return budget_; }
  bool is_independent(const ElementSet& s) const override { return s.size() <= budget_; }
  std::optional<PartitionStructure> partition_structure() const override;

 private:
  int budget_;
};

class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(GroundSet ground, std::vector<std::vector<int>> parts,
                   std::vector<int> budgets);
  bool is_independent(const ElementSet& s) const override;
  std::optional<PartitionStructure> partition_structure() const override;
  int part_of(int e) const { return part_of_[e]; }
  int num_parts() const { return static_cast<int>(budgets_.size()); }
  const std::vector<int>& budgets() const { return budgets_; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }

 private:
  std::vector<std::vector<int>> parts_;
  std::vector<int> budgets_;
  std::vector<int> part_of_;
};

struct MatroidAxiomReport {
  bool ok = false;
  std::string failure;  // human-readable counterexample when !ok
};

// Checks the family for the matroid axioms (empty set, downward closure,
// exchange). Exhaustive; intended for test fixtures with n <= 12.
MatroidAxiomReport check_matroid_axioms(int n, const std::vector<ElementSet>& family);

// Matroid given by an explicit independence family; axioms validated at
// construction.
class ExplicitMatroid final : public Matroid {
 public:
  ExplicitMatroid(GroundSet ground, const std::vector<ElementSet>& family);
  bool is_independent(const ElementSet& s) const override;

 private:
  std::unordered_set<std::uint64_t> masks_;
};

/// Size of a maximal independent subset of S, found by greedy augmentation;
/// uses at most |S| independence-oracle calls.
int rank(const Matroid& m, const ElementSet& s);

/// Max-weight independent set by matroid greedy: scan in descending weight
/// (ties by ascending index), keep elements with strictly positive weight
/// whose addition preserves independence. The result's indicator vector is
/// an optimal vertex of the matroid polytope.
ElementSet max_weight_independent_set(const Matroid& m, const Eigen::VectorXd& weights);

// True iff s is independent and no element can be added keeping independence.
bool is_basis(const Matroid& m, const ElementSet& s);

}  // namespace robsub

#endif  // ROBSUB_MATROID_HPP_
