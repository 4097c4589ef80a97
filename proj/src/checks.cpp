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

#include "robsub/checks.hpp"

#include <cstdint>
#include <vector>

namespace robsub {

std::string StructureReport::describe() const {
  std::string out;
  out += monotone ? "monotone" : "NOT monotone";
  if (monotone_violation) {
    out += " (f(A+e) < f(A) at A=" + monotone_violation->a.to_string() + ", e=" +
           std::to_string(monotone_violation->element) + ")";
  }
  out += submodular ? ", submodular" : ", NOT submodular";
  if (submodular_violation) {
    out += " (f_A(e) < f_B(e) at A=" + submodular_violation->a.to_string() + ", B=" +
           submodular_violation->b.to_string() + ", e=" +
           std::to_string(submodular_violation->element) + ")";
  }
  return out;
}

StructureReport check_submodular_monotone(const SubmodularOracle& f, double tol) {
  const int n = f.n();
  if (n > 16) {
    throw SizeLimitError("check_submodular_monotone: exhaustive check limited to n <= 16");
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> table(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    table[mask] = f.eval(ElementSet::from_mask(n, mask));
  }

  StructureReport report;
  report.monotone = true;
  report.submodular = true;

  for (std::uint64_t mask = 0; mask < total && report.monotone; ++mask) {
    for (int e = 0; e < n; ++e) {
      if ((mask >> e) & 1u) continue;
      const std::uint64_t with_e = mask | (std::uint64_t{1} << e);
      if (table[with_e] < table[mask] - tol) {
        report.monotone = false;
        report.monotone_violation = MonotoneViolation{ElementSet::from_mask(n, mask), e};
        break;
      }
    }
  }

  // Submodularity via the pairwise local condition: for S and e1, e2 not in S,
  //   f(S+e1) + f(S+e2) >= f(S+e1+e2) + f(S),
  // equivalent to diminishing returns. A violation gives the direct witness
  // f_A(e1) < f_B(e1) with A = S and B = S + e2.
  for (std::uint64_t mask = 0; mask < total && report.submodular; ++mask) {
    for (int e1 = 0; e1 < n && report.submodular; ++e1) {
      if ((mask >> e1) & 1u) continue;
      const std::uint64_t m1 = mask | (std::uint64_t{1} << e1);
      for (int e2 = e1 + 1; e2 < n; ++e2) {
        if ((mask >> e2) & 1u) continue;
        const std::uint64_t m2 = mask | (std::uint64_t{1} << e2);
        const std::uint64_t m12 = m1 | (std::uint64_t{1} << e2);
        if (table[m1] + table[m2] < table[m12] + table[mask] - tol) {
          report.submodular = false;
          report.submodular_violation = SubmodularViolation{
              ElementSet::from_mask(n, mask), ElementSet::from_mask(n, m2), e1};
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace robsub
