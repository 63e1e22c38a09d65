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

#include "dpq/universe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dpq {

Universe::Universe(double lo, double hi, int64_t cardinality)
    : lo_(lo), hi_(hi), cardinality_(cardinality), step_(0.0) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("universe bounds must be finite with lo < hi");
  }
  if (cardinality < 2) {
    throw std::invalid_argument("universe cardinality must be at least 2, got " +
                                std::to_string(cardinality));
  }
  step_ = (hi_ - lo_) / static_cast<double>(cardinality_ - 1);
}

Universe Universe::Integers(int64_t lo, int64_t hi) {
  if (lo >= hi) {
    throw std::invalid_argument("integer universe requires lo < hi");
  }
  return Universe(static_cast<double>(lo), static_cast<double>(hi),
                  hi - lo + 1);
}

Element Universe::Encode(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("cannot encode NaN");
  const double clipped = std::clamp(x, lo_, hi_);
  // floor(t + 0.5) rounds half-up.
  const double t = (clipped - lo_) / step_;
  const auto index = static_cast<int64_t>(std::floor(t + 0.5));
  return Element{std::clamp<int64_t>(index, 0, cardinality_ - 1)};
}

double Universe::Decode(Element e) const {
  if (!contains(e)) {
    throw std::out_of_range("element index " + std::to_string(e.index) +
                            " outside universe");
  }
  if (e.index == cardinality_ - 1) return hi_;
  return lo_ + static_cast<double>(e.index) * step_;
}

int64_t Universe::SegmentCardinality(std::optional<Element> a,
                                     std::optional<Element> b) const {
  const int64_t left = a ? a->index : -1;
  const int64_t right = b ? b->index : cardinality_;
  if (left >= right) {
    throw std::invalid_argument("segment endpoints must satisfy a < b");
  }
  return right - left - 1;
}

}  // namespace dpq
