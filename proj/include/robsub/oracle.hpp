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

#ifndef ROBSUB_ORACLE_HPP_
#define ROBSUB_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "robsub/element_set.hpp"

namespace robsub {

// Thrown when an exhaustive routine is asked to run beyond its size limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value oracle for a non-negative set function f: 2^V -> R+. Every eval()
/// bumps an atomic call counter, so implementations must be safe to query
/// from multiple workers; the function itself is immutable once built.
class SubmodularOracle {
 public:
  explicit SubmodularOracle(GroundSet ground) : ground_(std::move(ground)) {}
  virtual ~SubmodularOracle() = default;

  SubmodularOracle(const SubmodularOracle&) = delete;
  SubmodularOracle& operator=(const SubmodularOracle&) = delete;

  double eval(const ElementSet& s) const {
    if (s.ground_size() != ground_.n) {
      throw std::invalid_argument("oracle eval on mismatched ground set");
    }
    calls_.fetch_add(1, std::memory_order_relaxed);
    return value(s);
  }

  std::int64_t call_count() const { return calls_.load(std::memory_order_relaxed); }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }

 protected:
  virtual double value(const ElementSet& s) const = 0;

 private:
  GroundSet ground_;
  mutable std::atomic<std::int64_t> calls_{0};
};

using OraclePtr = std::shared_ptr<const SubmodularOracle>;

/// f_A(e) = f(A + e) - f(A); exactly two oracle calls.
inline double marginal(const SubmodularOracle& f, const ElementSet& a, int e) {
  if (e < 0 || e >= f.n()) throw std::domain_error("marginal: element out of range");
  return f.eval(a.with(e)) - f.eval(a);
}

/// One-call variant when f(A) is already known.
inline double marginal(const SubmodularOracle& f, const ElementSet& a, int e,
                       double cached_value_of_a) {
  if (e < 0 || e >= f.n()) throw std::domain_error("marginal: element out of range");
  return f.eval(a.with(e)) - cached_value_of_a;
}

// Wraps an arbitrary callable as an oracle; handy for fixtures.
class FunctionOracle final : public SubmodularOracle {
 public:
  FunctionOracle(GroundSet ground, std::function<double(const ElementSet&)> fn)
      : SubmodularOracle(std::move(ground)), fn_(std::move(fn)) {}

 protected:
  double value(const ElementSet& s) const override { return fn_(s); }

 private:
  std::function<double(const ElementSet&)> fn_;
};

}  // namespace robsub

#endif  // ROBSUB_ORACLE_HPP_
