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

#include "dpq/gk_sketch.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dpq {

namespace {

int64_t FloorTwoAlphaN(double alpha, int64_t n) {
  return static_cast<int64_t>(std::floor(2.0 * alpha * static_cast<double>(n)));
}

}  // namespace

int64_t Band(int64_t delta, int64_t n, double alpha) {
  const int64_t p = FloorTwoAlphaN(alpha, n);
  if (delta < 0 || delta > p) {
    throw std::invalid_argument("band: delta " + std::to_string(delta) +
                                " outside [0, floor(2 alpha n)]");
  }
  const int64_t diff = p - delta;
  if (diff == 0) return 0;
  for (int64_t b = 1; b < 63; ++b) {
    const int64_t hi = (int64_t{1} << b) + p % (int64_t{1} << b);
    if (diff < hi) return b;
  }
  return 63;
}

namespace internal {

size_t DescendantRunStart(std::span<const int64_t> bands, size_t i,
                          size_t floor_index) {
  size_t start = i;
  while (start > floor_index && bands[start - 1] < bands[i]) --start;
  return start;
}

}  // namespace internal

GkSummary::GkSummary(double alpha) : alpha_(alpha), compress_period_(1) {
  if (!(alpha > 0) || alpha >= 1) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  compress_period_ =
      std::max<int64_t>(1, static_cast<int64_t>(std::ceil(1.0 / (2.0 * alpha))));
}

GkSummary GkSummary::FromParts(double alpha, int64_t n,
                               std::vector<SketchTuple> tuples) {
  GkSummary s(alpha);
  int64_t total = 0;
  for (size_t i = 0; i < tuples.size(); ++i) {
    const SketchTuple& t = tuples[i];
    if (t.g < 0 || t.delta < 0) {
      throw std::invalid_argument("negative g or delta in tuple " +
                                  std::to_string(i));
    }
    if (i > 0 && t.value < tuples[i - 1].value) {
      throw std::invalid_argument("tuples not sorted at " + std::to_string(i));
    }
    total += t.g;
  }
  if (total != n) {
    throw std::invalid_argument("sum of g (" + std::to_string(total) +
                                ") differs from n (" + std::to_string(n) + ")");
  }
  if (!tuples.empty()) {
    const SketchTuple& first = tuples.front();
    const SketchTuple& last = tuples.back();
    if (first.g != 1 || first.delta != 0 || last.g != 1 || last.delta != 0) {
      throw std::invalid_argument("extreme tuples must be (v, 1, 0)");
    }
  }
  s.n_ = n;
  s.tuples_ = std::move(tuples);
  return s;
}

int64_t GkSummary::NewArrivalDelta() const {
  // One less than floor(2 alpha n) keeps g + delta <= 2 alpha n for the new
  // tuple while still covering the g + delta - 1 rank slack of its right
  // neighbour.
  return std::max<int64_t>(0, FloorTwoAlphaN(alpha_, n_) - 1);
}

void GkSummary::Insert(Element x) {
  if (tuples_.empty() || x < tuples_.front().value) {
    tuples_.insert(tuples_.begin(), SketchTuple{x, 1, 0});
  } else if (x >= tuples_.back().value) {
    // Equal to the current maximum still becomes the new last tuple: it is
    // the latest arrival of the largest value, so its rank is exact.
    tuples_.push_back(SketchTuple{x, 1, 0});
  } else {
    auto pos = std::upper_bound(
        tuples_.begin(), tuples_.end(), x,
        [](Element v, const SketchTuple& t) { return v < t.value; });
    tuples_.insert(pos, SketchTuple{x, 1, NewArrivalDelta()});
  }
  ++n_;
}

void GkSummary::Compress() {
  if (static_cast<double>(n_) < 1.0 / (2.0 * alpha_)) return;
  const size_t s = tuples_.size();
  if (s >= 4) {
    const double capacity = 2.0 * alpha_ * static_cast<double>(n_);
    std::vector<int64_t> bands(s);
    for (size_t i = 0; i < s; ++i) bands[i] = Band(tuples_[i].delta, n_, alpha_);

    // Sweep right to left, collecting survivors in reverse. `head` is the
    // merge target t_{i+1}; the last tuple is never a target.
    std::vector<SketchTuple> out;
    out.reserve(s);
    out.push_back(tuples_[s - 1]);
    SketchTuple head = tuples_[s - 2];
    int64_t head_band = bands[s - 2];
    size_t i = s - 3;
    while (i >= 1) {
      bool merged = false;
      if (bands[i] <= head_band) {
        const size_t start = internal::DescendantRunStart(bands, i, 1);
        int64_t g_star = 0;
        for (size_t k = start; k <= i; ++k) {
          assert(bands[k] <= bands[i]);
          g_star += tuples_[k].g;
        }
        if (static_cast<double>(g_star + head.g + head.delta) < capacity) {
          head.g += g_star;
          merged = true;
          i = start;  // loop decrement moves to start - 1
        }
      }
      if (!merged) {
        out.push_back(head);
        head = tuples_[i];
        head_band = bands[i];
      }
      if (i == 1) break;
      --i;
    }
    out.push_back(head);
    out.push_back(tuples_[0]);
    std::reverse(out.begin(), out.end());
    tuples_ = std::move(out);
  }
  MonotonizeUpperBounds();
}

void GkSummary::MonotonizeUpperBounds() {
  // r_max(v_i) <= r_max(v_{i+1}) because stored items keep their stream
  // order among equal values, so shrinking delta_i to
  // delta_{i+1} + g_{i+1} never excludes the true rank.
  if (tuples_.size() < 2) return;
  for (size_t i = tuples_.size() - 1; i-- > 0;) {
    const SketchTuple& next = tuples_[i + 1];
    tuples_[i].delta = std::min(tuples_[i].delta, next.delta + next.g);
  }
}

void GkSummary::Add(Element x) {
  if ((n_ + 1) % compress_period_ == 0) Compress();
  Insert(x);
}

RankInterval GkSummary::RankBounds(size_t i) const {
  if (i >= tuples_.size()) throw std::out_of_range("tuple index out of range");
  int64_t r = 0;
  for (size_t j = 0; j <= i; ++j) r += tuples_[j].g;
  return RankInterval{r, r + tuples_[i].delta};
}

int64_t GkSummary::MaxGapPlusDelta() const {
  int64_t m = 0;
  for (const SketchTuple& t : tuples_) m = std::max(m, t.g + t.delta);
  return m;
}

std::optional<QuantileAnswer> GkSummary::Quantile(double q) const {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  if (tuples_.empty()) throw std::invalid_argument("quantile of empty summary");
  const auto r =
      static_cast<int64_t>(std::ceil(q * static_cast<double>(n_)));
  const double tolerance = alpha_ * static_cast<double>(n_);
  int64_t r_min = 0;
  for (size_t i = 0; i < tuples_.size(); ++i) {
    r_min += tuples_[i].g;
    const int64_t r_max = r_min + tuples_[i].delta;
    if (static_cast<double>(std::max(r - r_min, r_max - r)) <= tolerance) {
      return QuantileAnswer{i, tuples_[i].value};
    }
  }
  return std::nullopt;
}

}  // namespace dpq
