//
// Copyright 2026 The dpq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPQ_UNIVERSE_H_
#define DPQ_UNIVERSE_H_

#include <compare>
#include <cstdint>
#include <optional>

namespace dpq {

// An element of the finite data universe, identified by its grid index.
// Elements are totally ordered by index.
struct Element {
  int64_t index = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

// Finite, totally ordered data universe realized as a uniform grid of
// `cardinality` points over the closed range [lo, hi]. Real values are
// clipped to the range and rounded to the nearest grid point (ties round
// up). Immutable after construction.
class Universe {
 public:
  // Throws std::invalid_argument unless lo < hi (both finite) and
  // cardinality >= 2.
  Universe(double lo, double hi, int64_t cardinality);

  // Identity universe over the integers [lo, hi]: grid step is exactly one,
  // so integer-valued data is represented without rounding.
  static Universe Integers(int64_t lo, int64_t hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int64_t cardinality() const { return cardinality_; }
  double step() const { return step_; }

  Element min_element() const { return Element{0}; }
  Element max_element() const { return Element{cardinality_ - 1}; }
  bool contains(Element e) const {
    return e.index >= 0 && e.index < cardinality_;
  }

  // Throws std::invalid_argument on NaN.
  Element Encode(double x) const;

  // Throws std::out_of_range if `e` is not in the universe.
  double Decode(Element e) const;

  // Number of elements strictly between `a` and `b`. An absent `a` stands
  // for the -infinity sentinel and an absent `b` for +infinity. Throws
  // std::invalid_argument if a >= b.
  int64_t SegmentCardinality(std::optional<Element> a,
                             std::optional<Element> b) const;

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  double lo_;
  double hi_;
  int64_t cardinality_;
  double step_;
};

}  // namespace dpq

#endif  // DPQ_UNIVERSE_H_
