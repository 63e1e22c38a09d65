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

#include "dpq/rank_intervals.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace dpq {

TargetQuantile TargetQuantile::For(double q, int64_t n) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  if (n < 1) throw std::invalid_argument("target rank needs n >= 1");
  const auto r = static_cast<int64_t>(std::ceil(q * static_cast<double>(n)));
  return TargetQuantile{q, std::clamp<int64_t>(r, 1, n)};
}

int64_t IntervalUtility(const RankInterval& interval, int64_t target_rank) {
  if (target_rank < interval.lo) return target_rank - interval.lo;
  if (target_rank > interval.hi) return interval.hi - target_rank;
  return 0;
}

AugmentedSummary::AugmentedSummary(const GkSummary& summary)
    : base_(&summary) {
  if (summary.empty()) {
    throw std::invalid_argument("rank intervals need a non-empty summary");
  }
}

RankInterval AugmentedSummary::RankIntervalOf(Element x) const {
  const auto& tuples = base_->tuples();
  const int64_t n = base_->count();
  int64_t lower_below = 0;  // -infinity sentinel
  int64_t upper_above = n + 1;  // +infinity sentinel
  std::optional<int64_t> equal_lower;
  int64_t r = 0;
  for (const SketchTuple& t : tuples) {
    r += t.g;
    if (t.value < x) {
      lower_below = std::max(lower_below, r);
    } else if (t.value == x) {
      if (!equal_lower) equal_lower = r;
    } else {
      upper_above = std::min(upper_above, r + t.delta);
    }
  }
  return RankInterval{equal_lower.value_or(lower_below), upper_above};
}

int64_t AugmentedSummary::Utility(const TargetQuantile& target,
                                  Element x) const {
  return IntervalUtility(RankIntervalOf(x), target.target_rank);
}

void AugmentedSummary::ForEachSegment(
    const Universe& universe, const TargetQuantile& target,
    const std::function<void(const ScoredSegment&)>& visit) const {
  const auto& tuples = base_->tuples();
  const int64_t n = base_->count();

  // Right-to-left sweep. Lower bounds come from n minus the g-mass to the
  // right; `upper_above` is the running minimum of upper bounds over values
  // strictly greater than the current group.
  int64_t suffix_g = 0;
  int64_t upper_above = n + 1;
  std::optional<Element> right;  // next larger stored value; none = +inf
  size_t right_anchor = tuples.size();

  auto emit_gap = [&](std::optional<Element> left, int64_t lower) {
    const int64_t card = universe.SegmentCardinality(left, right);
    if (card == 0) return;
    ScoredSegment seg;
    seg.kind = ScoredSegment::Kind::kOpenInterval;
    seg.anchor = right_anchor;
    seg.first = Element{left ? left->index + 1 : 0};
    seg.cardinality = card;
    seg.interval = RankInterval{lower, upper_above};
    seg.utility = IntervalUtility(seg.interval, target.target_rank);
    visit(seg);
  };

  size_t i = tuples.size();
  while (i > 0) {
    const size_t last = i - 1;
    const Element v = tuples[last].value;
    emit_gap(v, n - suffix_g);

    int64_t group_upper = std::numeric_limits<int64_t>::max();
    size_t k = last + 1;
    while (k > 0 && tuples[k - 1].value == v) {
      --k;
      const int64_t r = n - suffix_g;
      group_upper = std::min(group_upper, r + tuples[k].delta);
      suffix_g += tuples[k].g;
    }
    // k is now the first tuple holding v; its lower bound is n minus the
    // mass strictly to its right.
    const int64_t first_lower = n - suffix_g + tuples[k].g;

    ScoredSegment seg;
    seg.kind = ScoredSegment::Kind::kTupleValue;
    seg.anchor = k;
    seg.first = v;
    seg.cardinality = 1;
    seg.interval = RankInterval{first_lower, upper_above};
    seg.utility = IntervalUtility(seg.interval, target.target_rank);
    visit(seg);

    upper_above = std::min(upper_above, group_upper);
    right = v;
    right_anchor = k;
    i = k;
  }
  emit_gap(std::nullopt, 0);
}

std::vector<ScoredSegment> AugmentedSummary::EnumerateSegments(
    const Universe& universe, const TargetQuantile& target) const {
  std::vector<ScoredSegment> out;
  ForEachSegment(universe, target,
                 [&out](const ScoredSegment& s) { out.push_back(s); });
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace dpq
