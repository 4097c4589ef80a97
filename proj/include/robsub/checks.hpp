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

#ifndef ROBSUB_CHECKS_HPP_
#define ROBSUB_CHECKS_HPP_

#include <optional>
#include <string>

#include "robsub/oracle.hpp"

namespace robsub {

struct MonotoneViolation {
  ElementSet a;
  int element;  // f(A + e) < f(A)
};

struct SubmodularViolation {
  ElementSet a;  // A subseteq B, e outside B, f_A(e) < f_B(e)
  ElementSet b;
  int element;
};

struct StructureReport {
  bool monotone = false;
  bool submodular = false;
  std::optional<MonotoneViolation> monotone_violation;
  std::optional<SubmodularViolation> submodular_violation;

  bool ok() const { return monotone && submodular; }
  std::string describe() const;
};

/// Exhaustively verifies the diminishing-returns and monotonicity properties
/// over all subsets. Refuses grounds with n > 16. Violation witnesses are
/// reported in terms of the definitions (A subseteq B, element e).
StructureReport check_submodular_monotone(const SubmodularOracle& f, double tol = 1e-9);

}  // namespace robsub

#endif  // ROBSUB_CHECKS_HPP_
