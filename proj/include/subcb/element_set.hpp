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

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcb {

// A set of ground elements, stored as a sorted vector of distinct ids.
// Ground elements are identified by nonnegative ints 0..A-1.  The class is a
// small immutable value type: mutation-style operations return new sets.
class ElementSet {
 public:
  ElementSet() = default;

  ElementSet(std::initializer_list<int> elems)
      : ElementSet(std::vector<int>(elems)) {}

  explicit ElementSet(std::vector<int> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (!elems_.empty() && elems_.front() < 0) {
      throw std::domain_error("element ids must be nonnegative");
    }
  }

  // Builds a set from a bitmask over element ids 0..63.
  static ElementSet from_mask(std::uint64_t mask) {
    ElementSet s;
    for (int a = 0; mask != 0; ++a, mask >>= 1) {
      if (mask & 1u) s.elems_.push_back(a);
    }
    return s;
  }

  // Bitmask over element ids; requires all ids < 64.
  std::uint64_t to_mask() const {
    std::uint64_t mask = 0;
    for (int a : elems_) {
      if (a >= 64) throw std::domain_error("to_mask requires element ids < 64");
      mask |= (std::uint64_t{1} << a);
    }
    return mask;
  }

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }

  bool contains(int a) const {
    return std::binary_search(elems_.begin(), elems_.end(), a);
  }

  // Returns this set with `a` added (no-op if already present).
  ElementSet with(int a) const {
    ElementSet s(*this);
    auto it = std::lower_bound(s.elems_.begin(), s.elems_.end(), a);
    if (it == s.elems_.end() || *it != a) s.elems_.insert(it, a);
    return s;
  }

  // Returns this set with `a` removed (no-op if absent).
  ElementSet without(int a) const {
    ElementSet s(*this);
    auto it = std::lower_bound(s.elems_.begin(), s.elems_.end(), a);
    if (it != s.elems_.end() && *it == a) s.elems_.erase(it);
    return s;
  }

  const std::vector<int>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool is_subset_of(const ElementSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
  }

  // Serialization used in CSV output: sorted ids joined by '-'; empty set
  // serializes to the empty string.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i > 0) out += '-';
      out += std::to_string(elems_[i]);
    }
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet& a, const ElementSet& b) {
    return a.elems_ <=> b.elems_;
  }

 private:
  std::vector<int> elems_;
};

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return ElementSet(std::move(out));
}

inline ElementSet set_intersect(const ElementSet& a, const ElementSet& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return ElementSet(std::move(out));
}

inline ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return ElementSet(std::move(out));
}

}  // namespace subcb
