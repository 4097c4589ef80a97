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

#include "robsub/union_matroid.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace robsub {

UnionMatroid::UnionMatroid(MatroidPtr base, int ell)
    : Matroid(base ? base->ground() : GroundSet{}), base_(std::move(base)), ell_(ell) {
  if (!base_) throw std::invalid_argument("union matroid needs a base matroid");
  if (ell_ < 1) throw std::invalid_argument("union matroid needs ell >= 1");
  base_structure_ = base_->partition_structure();
  if (base_structure_) {
    part_of_.assign(n(), -1);
    for (std::size_t j = 0; j < base_structure_->parts.size(); ++j) {
      for (int e : base_structure_->parts[j]) part_of_[e] = static_cast<int>(j);
      part_budget_.push_back(static_cast<long long>(ell_) * base_structure_->budgets[j]);
    }
  }
}

bool UnionMatroid::is_independent(const ElementSet& s) const {
  if (ell_ == 1) return base_->is_independent(s);
  if (base_structure_) {
    std::vector<int> counts(part_budget_.size(), 0);
    bool ok = true;
    s.for_each([&](int e) {
      int j = part_of_[e];
      if (++counts[j] > part_budget_[j]) ok = false;
    });
    return ok;
  }

  // Rank-formula membership: |S| independent in M_ell iff for every A <= S,
  // |S \ A| + ell * rank(A) >= |S|.
  if (s.size() > 20) {
    throw SizeLimitError("union matroid membership limited to |S| <= 20 for general bases");
  }
  std::vector<int> elems = s.indices();
  const int m = static_cast<int>(elems.size());
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ElementSet a(n());
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) a.insert(elems[i]);
    }
    long long slack = static_cast<long long>(m - a.size()) +
                      static_cast<long long>(ell_) * rank(*base_, a);
    if (slack < m) return false;
  }
  return true;
}

std::optional<PartitionStructure> UnionMatroid::partition_structure() const {
  if (!base_structure_) return std::nullopt;
  PartitionStructure ps = *base_structure_;
  for (int& b : ps.budgets) b *= ell_;
  return ps;
}

namespace {

// Exact witness search for general bases: DP over subsets of S.
bool split_dp(const Matroid& base, const std::vector<int>& elems, std::uint64_t mask, int layers,
              std::unordered_map<std::uint64_t, bool>& memo_fail,
              std::vector<ElementSet>& out) {
  const int n = base.n();
  auto to_set = [&](std::uint64_t m) {
    ElementSet s(n);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if ((m >> i) & 1u) s.insert(elems[i]);
    }
    return s;
  };
  if (layers == 1) {
    ElementSet rest = to_set(mask);
    if (base.is_independent(rest)) {
      out.push_back(rest);
      return true;
    }
    return false;
  }
  std::uint64_t key = mask * 32 + static_cast<std::uint64_t>(layers);
  if (auto it = memo_fail.find(key); it != memo_fail.end()) return false;
  // Enumerate submasks of mask as the first layer (including empty).
  std::uint64_t sub = mask;
  while (true) {
    if (base.is_independent(to_set(sub)) &&
        split_dp(base, elems, mask & ~sub, layers - 1, memo_fail, out)) {
      out.push_back(to_set(sub));
      return true;
    }
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
  memo_fail.emplace(key, true);
  return false;
}

}  // namespace

UnionMembership union_is_independent(const UnionMatroid& u, const ElementSet& s) {
  UnionMembership result;
  const int n = u.n();
  const int ell = u.ell();

  if (auto ps = u.base()->partition_structure()) {
    // Feasibility: |S ^ P_j| <= ell * b_j for every part. Witness: spread each
    // part's elements round-robin over the ell layers.
    std::vector<ElementSet> layers(ell, ElementSet(n));
    for (std::size_t j = 0; j < ps->parts.size(); ++j) {
      std::vector<int> in_part;
      for (int e : ps->parts[j]) {
        if (s.contains(e)) in_part.push_back(e);
      }
      if (static_cast<long long>(in_part.size()) >
          static_cast<long long>(ell) * ps->budgets[j]) {
        return result;  // not independent
      }
      std::sort(in_part.begin(), in_part.end());
      for (std::size_t i = 0; i < in_part.size(); ++i) {
        layers[i % ell].insert(in_part[i]);
      }
    }
    result.independent = true;
    result.witness = std::move(layers);
    return result;
  }

  if (s.size() > 16) {
    throw SizeLimitError("union witness search limited to |S| <= 16 for general bases");
  }
  std::vector<int> elems = s.indices();
  std::uint64_t mask = (elems.empty()) ? 0 : ((std::uint64_t{1} << elems.size()) - 1);
  std::unordered_map<std::uint64_t, bool> memo_fail;
  std::vector<ElementSet> out;
  if (split_dp(*u.base(), elems, mask, ell, memo_fail, out)) {
    std::reverse(out.begin(), out.end());
    result.independent = true;
    result.witness = std::move(out);
  }
  return result;
}

}  // namespace robsub
