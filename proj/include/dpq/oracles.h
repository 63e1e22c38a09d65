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

// Exact full-data references. These hold the complete dataset and are only
// linked into tests and the benchmark harness, never into the streaming
// library itself.

#ifndef DPQ_ORACLES_H_
#define DPQ_ORACLES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dpq/gk_sketch.h"
#include "dpq/universe.h"

namespace dpq {

// Sorted multiset of universe elements.
class ExactDataset {
 public:
  ExactDataset() = default;
  explicit ExactDataset(std::vector<Element> data);

  int64_t size() const { return static_cast<int64_t>(sorted_.size()); }
  const std::vector<Element>& sorted() const { return sorted_; }

  void Add(Element x);  // keeps order; O(n)

 private:
  std::vector<Element> sorted_;
};

// [#{y < x}, #{y <= x}], by binary search.
RankInterval ExactRankInterval(const ExactDataset& d, Element x);

// Element of rank ceil(q n). Throws std::invalid_argument on an empty
// dataset or q outside (0, 1).
Element ExactQuantile(const ExactDataset& d, double q);

// True iff [r_min(x), r_max(x)] meets [ceil(qn) - alpha n, ceil(qn) + alpha n].
bool IsApproxQuantile(const ExactDataset& d, Element x, double q, double alpha);

// exp(epsilon * score / divisor), normalized. Computed relative to the
// maximum score so large magnitudes do not overflow.
std::vector<double> ExplicitEmDistribution(std::span<const double> scores,
                                           double epsilon, double divisor);

// Half the l1 distance between two distributions of equal length.
double TotalVariation(std::span<const double> p, std::span<const double> q);

}  // namespace dpq

#endif  // DPQ_ORACLES_H_
