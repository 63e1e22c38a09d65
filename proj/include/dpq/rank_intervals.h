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

#ifndef DPQ_RANK_INTERVALS_H_
#define DPQ_RANK_INTERVALS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "dpq/gk_sketch.h"
#include "dpq/universe.h"

namespace dpq {

// Target rank ceil(q * n) for a quantile q in (0, 1).
struct TargetQuantile {
  double q = 0.5;
  int64_t target_rank = 1;

  // Throws std::invalid_argument unless 0 < q < 1 and n >= 1.
  static TargetQuantile For(double q, int64_t n);
};

// -d(target, [lo, hi]): zero inside the interval, minus the l1 distance to
// the nearest endpoint outside it.
int64_t IntervalUtility(const RankInterval& interval, int64_t target_rank);

// A run of universe elements that share one estimated rank interval.
struct ScoredSegment {
  enum class Kind { kTupleValue, kOpenInterval };

  Kind kind = Kind::kTupleValue;
  // kTupleValue: index of the first tuple holding the value.
  // kOpenInterval: index of the tuple bounding the gap from above, or the
  // tuple count for the gap against the +infinity sentinel.
  size_t anchor = 0;
  Element first;            // smallest element of the segment
  int64_t cardinality = 1;  // elements first .. first + cardinality - 1
  RankInterval interval;
  int64_t utility = 0;

  friend bool operator==(const ScoredSegment&, const ScoredSegment&) = default;
};

// A summary viewed together with the two virtual sentinel tuples at
// -infinity (rank [0, 0]) and +infinity (rank [n+1, n+1]). The sentinels
// are never stored; they only appear as boundary values in the estimates.
// Holds a reference: the summary must outlive this view and stay unchanged.
class AugmentedSummary {
 public:
  // Throws std::invalid_argument if the summary is empty.
  explicit AugmentedSummary(const GkSummary& summary);

  const GkSummary& base() const { return *base_; }
  int64_t count() const { return base_->count(); }

  // Estimated rank interval of x.
  //   x equal to a stored value (first such tuple i):
  //       lo = sum_{j<=i} g_j,
  //       hi = min upper bound over tuples with value > x;
  //   x strictly between stored values:
  //       lo = max lower bound over tuples with value < x,
  //       hi = min upper bound over tuples with value > x.
  // The sentinels make both sets non-empty, so lo >= 0 and hi <= n + 1.
  RankInterval RankIntervalOf(Element x) const;

  int64_t Utility(const TargetQuantile& target, Element x) const;

  // Visits the partition of `universe` into tuple-value segments (one per
  // distinct stored value) and non-empty open-interval segments, from the
  // largest elements down. Uses O(1) state beyond the summary.
  void ForEachSegment(const Universe& universe, const TargetQuantile& target,
                      const std::function<void(const ScoredSegment&)>& visit) const;

  // All segments in ascending element order.
  std::vector<ScoredSegment> EnumerateSegments(
      const Universe& universe, const TargetQuantile& target) const;

 private:
  const GkSummary* base_;
};

}  // namespace dpq

#endif  // DPQ_RANK_INTERVALS_H_
