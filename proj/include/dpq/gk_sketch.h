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

#ifndef DPQ_GK_SKETCH_H_
#define DPQ_GK_SKETCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpq/universe.h"

namespace dpq {

// Closed integer rank interval [lo, hi].
struct RankInterval {
  int64_t lo = 0;
  int64_t hi = 0;

  bool Contains(int64_t r) const { return lo <= r && r <= hi; }
  friend bool operator==(const RankInterval&, const RankInterval&) = default;
};

// One summary entry (v, g, delta):
//   g     = r_min(v_i) - r_min(v_{i-1})
//   delta = r_max(v_i) - r_min(v_i)
struct SketchTuple {
  Element value;
  int64_t g = 0;
  int64_t delta = 0;

  friend bool operator==(const SketchTuple&, const SketchTuple&) = default;
};

struct QuantileAnswer {
  size_t index = 0;
  Element value;
};

// Greenwald-Khanna all-quantiles summary over a finite universe.
//
// Invariants maintained for every n >= 1:
//   * tuple values are sorted, equal values in arrival order;
//   * sum of g equals n;
//   * the first tuple is (min, 1, 0) and the last is (max, 1, 0);
//   * once n >= 1/(2 alpha), every tuple has g + delta <= 2 alpha n;
//   * after Compress(), prefix sums of g and the upper bounds
//     delta_i + sum_{j<=i} g_j are both non-decreasing.
//
// Single writer. Readers should work on a copy or hold exclusive access.
class GkSummary {
 public:
  // Throws std::invalid_argument unless 0 < alpha < 1.
  explicit GkSummary(double alpha);

  // Rebuilds a summary from serialized parts. Throws std::invalid_argument
  // if the parts violate the sortedness, endpoint or sum-of-g invariants.
  static GkSummary FromParts(double alpha, int64_t n,
                             std::vector<SketchTuple> tuples);

  double alpha() const { return alpha_; }
  int64_t count() const { return n_; }
  const std::vector<SketchTuple>& tuples() const { return tuples_; }
  size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  // Number of insertions between scheduled compressions, ceil(1/(2 alpha)).
  int64_t compress_period() const { return compress_period_; }

  // Places x into the summary without compressing. A new minimum or maximum
  // gets delta 0; anything else is placed after all stored values <= x.
  void Insert(Element x);

  // Merges runs of tuples that fit into their right neighbour. No-op while
  // n < 1/(2 alpha). The extreme tuples are never merged, so the endpoint
  // invariant survives.
  void Compress();

  // One streaming step: compresses when the 1-based position of x is a
  // multiple of compress_period(), then inserts x.
  void Add(Element x);

  template <typename Range>
  void AddAll(const Range& xs) {
    for (const auto& x : xs) Add(x);
  }

  // [sum_{j<=i} g_j, sum_{j<=i} g_j + delta_i]. Linear in i.
  RankInterval RankBounds(size_t i) const;

  // max_i (g_i + delta_i); zero when empty.
  int64_t MaxGapPlusDelta() const;

  // First tuple whose bounds lie within alpha*n of rank ceil(q*n). Throws
  // std::invalid_argument unless 0 < q < 1 and the summary is non-empty.
  // Returns nullopt only if the error invariant has been broken.
  std::optional<QuantileAnswer> Quantile(double q) const;

 private:
  void MonotonizeUpperBounds();
  int64_t NewArrivalDelta() const;

  double alpha_;
  int64_t compress_period_;
  int64_t n_ = 0;
  std::vector<SketchTuple> tuples_;
};

// Band of `delta` at time n, with p = floor(2 alpha n). Band 0 holds
// delta == p (the youngest tuples); band b >= 1 holds the deltas with
//   2^(b-1) + (p mod 2^(b-1)) <= p - delta < 2^b + (p mod 2^b).
// Smaller delta never yields a smaller band. Throws std::invalid_argument
// if delta is negative or exceeds p.
int64_t Band(int64_t delta, int64_t n, double alpha);

namespace internal {

// Start index of the descendant run of node i in the band tree: the
// maximal run [start, i) of tuples with band < bands[i], never extending
// below `floor_index`.
size_t DescendantRunStart(std::span<const int64_t> bands, size_t i,
                          size_t floor_index);

}  // namespace internal

}  // namespace dpq

#endif  // DPQ_GK_SKETCH_H_
