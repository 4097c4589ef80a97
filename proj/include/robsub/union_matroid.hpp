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

#ifndef ROBSUB_UNION_MATROID_HPP_
#define ROBSUB_UNION_MATROID_HPP_

#include <optional>
#include <vector>

#include "robsub/matroid.hpp"

namespace robsub {

/// The ell-fold union M_ell of a base matroid: S is independent iff it splits
/// into ell independent sets of the base. For partition-structured bases this
/// is itself a partition matroid with budgets ell * b_j; for general bases the
/// rank formula r(S) = min_{A <= S} |S \ A| + ell * r_M(A) decides membership
/// (exhaustive over A, so |S| <= 20).
class UnionMatroid final : public Matroid {
 public:
  UnionMatroid(MatroidPtr base, int ell);

  bool is_independent(const ElementSet& s) const override;
  std::optional<PartitionStructure> partition_structure() const override;

  const MatroidPtr& base() const { return base_; }
  int ell() const { return ell_; }

 private:
  MatroidPtr base_;
  int ell_;
  std::optional<PartitionStructure> base_structure_;
  std::vector<int> part_of_;            // partition path only
  std::vector<long long> part_budget_;  // ell * b_j
};

struct UnionMembership {
  bool independent = false;
  // On success, ell base-independent sets covering S (some possibly empty).
  std::vector<ElementSet> witness;
};

/// Decides membership and, when independent, produces a witness partition.
/// Partition-structured bases get a constructive round-robin witness; general
/// bases fall back to subset DP (|S| <= 16).
UnionMembership union_is_independent(const UnionMatroid& u, const ElementSet& s);

}  // namespace robsub

#endif  // ROBSUB_UNION_MATROID_HPP_
