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

#ifndef ROBSUB_ELEMENT_SET_HPP_
#define ROBSUB_ELEMENT_SET_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace robsub {

// Ground set V = {0, ..., n-1}, optionally with display labels.
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // empty or exactly n entries

  GroundSet() = default;
  explicit GroundSet(int size, std::vector<std::string> names = {})
      : n(size), labels(std::move(names)) {
    if (n < 1) throw std::invalid_argument("ground set needs n >= 1");
    if (!labels.empty() && static_cast<int>(labels.size()) != n) {
      throw std::invalid_argument("label count must equal n");
    }
  }
};

/// A subset of a ground set {0..n-1}. Stored as a single 64-bit mask when
/// n <= 64 and as a sorted index list otherwise, so that equality and
/// subset tests cost O(n/word) on the common small-ground path.
class ElementSet {
 public:
  ElementSet() : n_(0), mask_(0) {}
  explicit ElementSet(int n) : n_(n), mask_(0) {
    if (n < 1) throw std::invalid_argument("ElementSet needs n >= 1");
  }

  static ElementSet from_mask(int n, std::uint64_t mask) {
    if (n < 1 || n > 64) throw std::invalid_argument("from_mask needs 1 <= n <= 64");
    if (n < 64 && (mask >> n) != 0) throw std::domain_error("mask has bits outside ground set");
    ElementSet s(n);
    s.mask_ = mask;
    return s;
  }
  static ElementSet of(int n, std::initializer_list<int> elems) {
    ElementSet s(n);
    for (int e : elems) s.insert(e);
    return s;
  }
  static ElementSet of(int n, const std::vector<int>& elems) {
    ElementSet s(n);
    for (int e : elems) s.insert(e);
    return s;
  }
  static ElementSet full(int n) {
    ElementSet s(n);
    for (int e = 0; e < n; ++e) s.insert(e);
    return s;
  }

  int ground_size() const { return n_; }
  bool small() const { return n_ <= 64; }

  int size() const {
    return small() ? std::popcount(mask_) : static_cast<int>(sorted_.size());
  }
  bool empty() const { return small() ? mask_ == 0 : sorted_.empty(); }

  bool contains(int e) const {
    check_element(e);
    if (small()) return (mask_ >> e) & 1u;
    return std::binary_search(sorted_.begin(), sorted_.end(), e);
  }

  // Returns false if e was already present.
  bool insert(int e) {
    check_element(e);
    if (small()) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if (mask_ & bit) return false;
      mask_ |= bit;
      return true;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e);
    if (it != sorted_.end() && *it == e) return false;
    sorted_.insert(it, e);
    return true;
  }

  bool erase(int e) {
    check_element(e);
    if (small()) {
      std::uint64_t bit = std::uint64_t{1} << e;
      if (!(mask_ & bit)) return false;
      mask_ &= ~bit;
      return true;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e);
    if (it == sorted_.end() || *it != e) return false;
    sorted_.erase(it);
    return true;
  }

  ElementSet with(int e) const {
    ElementSet s = *this;
    s.insert(e);
    return s;
  }
  ElementSet without(int e) const {
    ElementSet s = *this;
    s.erase(e);
    return s;
  }

  bool operator==(const ElementSet& o) const {
    if (n_ != o.n_) return false;
    return small() ? mask_ == o.mask_ : sorted_ == o.sorted_;
  }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }

  bool subset_of(const ElementSet& o) const {
    check_same_ground(o);
    if (small()) return (mask_ & ~o.mask_) == 0;
    return std::includes(o.sorted_.begin(), o.sorted_.end(), sorted_.begin(), sorted_.end());
  }

  ElementSet united(const ElementSet& o) const {
    check_same_ground(o);
    ElementSet s(n_);
    if (small()) {
      s.mask_ = mask_ | o.mask_;
    } else {
      std::set_union(sorted_.begin(), sorted_.end(), o.sorted_.begin(), o.sorted_.end(),
                     std::back_inserter(s.sorted_));
    }
    return s;
  }

  ElementSet intersected(const ElementSet& o) const {
    check_same_ground(o);
    ElementSet s(n_);
    if (small()) {
      s.mask_ = mask_ & o.mask_;
    } else {
      std::set_intersection(sorted_.begin(), sorted_.end(), o.sorted_.begin(), o.sorted_.end(),
                            std::back_inserter(s.sorted_));
    }
    return s;
  }

  ElementSet difference(const ElementSet& o) const {
    check_same_ground(o);
    ElementSet s(n_);
    if (small()) {
      s.mask_ = mask_ & ~o.mask_;
    } else {
      std::set_difference(sorted_.begin(), sorted_.end(), o.sorted_.begin(), o.sorted_.end(),
                          std::back_inserter(s.sorted_));
    }
    return s;
  }

  // Mask view; only valid on the small path.
  std::uint64_t mask() const {
    if (!small()) throw std::logic_error("mask() on large ground set");
    return mask_;
  }

  std::vector<int> indices() const {
    if (!small()) return sorted_;
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(std::countr_zero(m));
    }
    return out;
  }

  template <typename Visitor>
  void for_each(Visitor&& visit) const {
    if (small()) {
      for (std::uint64_t m = mask_; m != 0; m &= m - 1) visit(std::countr_zero(m));
    } else {
      for (int e : sorted_) visit(e);
    }
  }

  // Lexicographic order on the sorted index sequences (empty set first).
  bool lex_less(const ElementSet& o) const {
    std::vector<int> a = indices(), b = o.indices();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](int e) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    });
    return out + "}";
  }

 private:
  void check_element(int e) const {
    if (e < 0 || e >= n_) {
      throw std::domain_error("element " + std::to_string(e) + " out of range [0," +
                              std::to_string(n_) + ")");
    }
  }
  void check_same_ground(const ElementSet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ground set size mismatch");
  }

  int n_;
  std::uint64_t mask_;
  std::vector<int> sorted_;
};

}  // namespace robsub

#endif  // ROBSUB_ELEMENT_SET_HPP_
