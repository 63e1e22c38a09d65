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
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "dpq/oracles.h"
#include "dpq/random.h"
#include "test_streams.h"

namespace dpq {
namespace {

using testing::AllKinds;
using testing::Elements;
using testing::KindName;
using testing::MakeStream;
using testing::StreamKind;

// Checks every structural invariant that must hold after a compress.
void ExpectWellFormed(const GkSummary& s, const std::string& context) {
  SCOPED_TRACE(context);
  const auto& t = s.tuples();
  ASSERT_FALSE(t.empty());
  int64_t sum_g = 0;
  int64_t prev_lo = 0, prev_hi = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    ASSERT_GE(t[i].g, 0);
    ASSERT_GE(t[i].delta, 0);
    if (i > 0) {
      ASSERT_LE(t[i - 1].value, t[i].value) << "unsorted at " << i;
    }
    sum_g += t[i].g;
    const int64_t lo = sum_g, hi = sum_g + t[i].delta;
    ASSERT_LE(prev_lo, lo) << "lower bounds decrease at " << i;
    ASSERT_LE(prev_hi, hi) << "upper bounds decrease at " << i;
    prev_lo = lo;
    prev_hi = hi;
  }
  ASSERT_EQ(sum_g, s.count());
  EXPECT_EQ(t.front().g, 1);
  EXPECT_EQ(t.front().delta, 0);
  EXPECT_EQ(t.back().g, 1);
  EXPECT_EQ(t.back().delta, 0);
  if (static_cast<double>(s.count()) >= 1.0 / (2.0 * s.alpha())) {
    ASSERT_LE(static_cast<double>(s.MaxGapPlusDelta()),
              2.0 * s.alpha() * static_cast<double>(s.count()));
  }
}

GkSummary Build(const std::vector<Element>& xs, double alpha) {
  GkSummary s(alpha);
  s.AddAll(xs);
  s.Compress();
  return s;
}

TEST(BandTest, Endpoints) {
  // n = 100, alpha = 0.1: floor(2 alpha n) = 20.
  EXPECT_EQ(Band(20, 100, 0.1), 0);
  const int64_t top = Band(0, 100, 0.1);
  for (int64_t d = 0; d <= 20; ++d) EXPECT_LE(Band(d, 100, 0.1), top);
  EXPECT_LT(Band(20, 100, 0.1), Band(15, 100, 0.1));
  EXPECT_LT(Band(15, 100, 0.1), Band(0, 100, 0.1));
}

TEST(BandTest, MonotoneInDelta) {
  for (int64_t n : {7, 100, 1000, 12345}) {
    for (double alpha : {0.5, 0.1, 0.013}) {
      const auto p = static_cast<int64_t>(std::floor(2 * alpha * n));
      for (int64_t d = 1; d <= p; ++d) {
        EXPECT_GE(Band(d - 1, n, alpha), Band(d, n, alpha));
      }
    }
  }
}

// Band b holds the deltas whose distance from p = floor(2 alpha n) lies in
// [2^(b-1) + p mod 2^(b-1), 2^b + p mod 2^b).
TEST(BandTest, MatchesPowerOfTwoSchedule) {
  const int64_t n = 1000;
  const double alpha = 0.0105;  // p = 21
  const int64_t p = 21;
  for (int64_t d = 0; d <= p; ++d) {
    const int64_t diff = p - d;
    int64_t expected = 0;
    if (diff > 0) {
      for (int64_t b = 1;; ++b) {
        const int64_t lo = (int64_t{1} << (b - 1)) + p % (int64_t{1} << (b - 1));
        const int64_t hi = (int64_t{1} << b) + p % (int64_t{1} << b);
        if (lo <= diff && diff < hi) {
          expected = b;
          break;
        }
        ASSERT_LT(b, 10);
      }
    }
    EXPECT_EQ(Band(d, n, alpha), expected) << "delta " << d;
  }
}

TEST(BandTest, RejectsOutOfRange) {
  EXPECT_THROW(Band(21, 100, 0.1), std::invalid_argument);
  EXPECT_THROW(Band(-1, 100, 0.1), std::invalid_argument);
}

// The descendants of a node, found by walking explicit parent links, form
// the contiguous run reported by DescendantRunStart.
TEST(DescendantTest, RunMatchesExplicitTree) {
  RandomSource rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t s = 2 + rng.UniformInt(30);
    std::vector<int64_t> bands(s);
    for (auto& b : bands) b = static_cast<int64_t>(rng.UniformInt(5));
    // Parent of i: nearest j > i with a strictly larger band.
    std::vector<int64_t> parent(s, -1);
    for (size_t i = 0; i < s; ++i) {
      for (size_t j = i + 1; j < s; ++j) {
        if (bands[j] > bands[i]) {
          parent[i] = static_cast<int64_t>(j);
          break;
        }
      }
    }
    for (size_t i = 0; i < s; ++i) {
      std::vector<size_t> desc;
      for (size_t k = 0; k < i; ++k) {
        int64_t a = parent[k];
        while (a != -1 && a < static_cast<int64_t>(i)) a = parent[a];
        if (a == static_cast<int64_t>(i)) desc.push_back(k);
      }
      const size_t start = internal::DescendantRunStart(bands, i, 0);
      ASSERT_EQ(desc.size(), i - start) << "trial " << trial << " node " << i;
      for (size_t k = 0; k < desc.size(); ++k) {
        ASSERT_EQ(desc[k], start + k);
      }
    }
  }
}

TEST(DescendantTest, FloorStopsTheRun) {
  const std::vector<int64_t> bands = {0, 0, 0, 3};
  EXPECT_EQ(internal::DescendantRunStart(bands, 3, 0), 0u);
  EXPECT_EQ(internal::DescendantRunStart(bands, 3, 1), 1u);
  EXPECT_EQ(internal::DescendantRunStart(bands, 1, 0), 1u);
}

TEST(GkSummaryTest, RejectsBadAlpha) {
  EXPECT_THROW(GkSummary(0.0), std::invalid_argument);
  EXPECT_THROW(GkSummary(1.0), std::invalid_argument);
  EXPECT_THROW(GkSummary(-0.1), std::invalid_argument);
}

TEST(GkSummaryTest, CompressPeriod) {
  EXPECT_EQ(GkSummary(0.5).compress_period(), 1);
  EXPECT_EQ(GkSummary(0.1).compress_period(), 5);
  EXPECT_EQ(GkSummary(0.3).compress_period(), 2);
  EXPECT_EQ(GkSummary(1e-4).compress_period(), 5000);
}

TEST(GkSummaryTest, InsertFirstElement) {
  GkSummary s(0.25);
  s.Insert(Element{5});
  EXPECT_EQ(s.count(), 1);
  EXPECT_EQ(s.tuples(), (std::vector<SketchTuple>{{Element{5}, 1, 0}}));
}

TEST(GkSummaryTest, InsertNewExtremes) {
  GkSummary s = GkSummary::FromParts(
      0.25, 2, {{Element{3}, 1, 0}, {Element{9}, 1, 0}});
  s.Insert(Element{1});
  EXPECT_EQ(s.tuples(),
            (std::vector<SketchTuple>{
                {Element{1}, 1, 0}, {Element{3}, 1, 0}, {Element{9}, 1, 0}}));
  s.Insert(Element{12});
  EXPECT_EQ(s.tuples().back(), (SketchTuple{Element{12}, 1, 0}));
  s.Insert(Element{12});  // ties with the maximum stay exact
  EXPECT_EQ(s.tuples().back(), (SketchTuple{Element{12}, 1, 0}));
  EXPECT_EQ(s.count(), 5);
}

// An interior arrival gets delta one below floor(2 alpha n), with n counted
// before the insert: floor(2 * 0.25 * 2) - 1 = 0.
TEST(GkSummaryTest, InsertInterior) {
  GkSummary s = GkSummary::FromParts(
      0.25, 2, {{Element{3}, 1, 0}, {Element{9}, 1, 0}});
  s.Insert(Element{7});
  EXPECT_EQ(s.count(), 3);
  EXPECT_EQ(s.tuples(),
            (std::vector<SketchTuple>{
                {Element{3}, 1, 0}, {Element{7}, 1, 0}, {Element{9}, 1, 0}}));

  GkSummary t = GkSummary::FromParts(
      0.25, 10, {{Element{3}, 1, 0}, {Element{5}, 8, 0}, {Element{9}, 1, 0}});
  t.Insert(Element{5});  // after the stored 5
  EXPECT_EQ(t.tuples()[2], (SketchTuple{Element{5}, 1, 4}));
}

TEST(GkSummaryTest, CompressIsNoOpBelowGuard) {
  // 1 / (2 alpha) = 50, so nothing may change with 10 items.
  GkSummary s(0.01);
  for (int64_t v : {5, 3, 8, 1, 9, 2, 7, 4, 6, 0}) s.Insert(Element{v});
  const auto before = s.tuples();
  s.Compress();
  EXPECT_EQ(s.tuples(), before);
}

// alpha = 0.25, n = 8: capacity 2 alpha n = 4.
TEST(GkSummaryTest, CompressMergeNeedsStrictInequality) {
  GkSummary tight = GkSummary::FromParts(0.25, 8,
                                         {{Element{1}, 1, 0},
                                          {Element{2}, 2, 0},
                                          {Element{3}, 1, 1},
                                          {Element{4}, 3, 0},
                                          {Element{9}, 1, 0}});
  const auto before = tight.tuples();
  tight.Compress();  // 1 + 3 + 0 == 4: kept
  EXPECT_EQ(tight.tuples(), before);

  GkSummary loose = GkSummary::FromParts(0.25, 8,
                                         {{Element{1}, 1, 0},
                                          {Element{2}, 3, 0},
                                          {Element{3}, 1, 1},
                                          {Element{4}, 2, 0},
                                          {Element{9}, 1, 0}});
  loose.Compress();  // 1 + 2 + 0 < 4: merged into the right neighbour
  EXPECT_EQ(loose.tuples(), (std::vector<SketchTuple>{{Element{1}, 1, 0},
                                                      {Element{2}, 3, 0},
                                                      {Element{4}, 3, 0},
                                                      {Element{9}, 1, 0}}));
}

TEST(GkSummaryTest, FromPartsValidates) {
  EXPECT_THROW(GkSummary::FromParts(0.1, 3, {{Element{1}, 1, 0},
                                             {Element{2}, 1, 0}}),
               std::invalid_argument);  // sum of g
  EXPECT_THROW(GkSummary::FromParts(0.1, 2, {{Element{2}, 1, 0},
                                             {Element{1}, 1, 0}}),
               std::invalid_argument);  // order
  EXPECT_THROW(GkSummary::FromParts(0.1, 3, {{Element{1}, 2, 0},
                                             {Element{2}, 1, 0}}),
               std::invalid_argument);  // endpoint
  EXPECT_THROW(GkSummary::FromParts(0.1, 3, {{Element{1}, 1, 0},
                                             {Element{2}, 1, -1},
                                             {Element{3}, 1, 0}}),
               std::invalid_argument);  // negative delta
}

TEST(GkSummaryTest, SmallStreamExamples) {
  const auto xs = Elements({1, 2, 2, 3, 5, 2, 6, 5});
  {
    const GkSummary s = Build(xs, 0.5);
    const auto ans = s.Quantile(0.5);
    ASSERT_TRUE(ans.has_value());
    EXPECT_GE(ans->value.index, 1);
    EXPECT_LE(ans->value.index, 5);
  }
  {
    const GkSummary s = Build(xs, 0.25);
    const auto ans = s.Quantile(0.5);
    ASSERT_TRUE(ans.has_value());
    EXPECT_TRUE(ans->value.index == 2 || ans->value.index == 3 ||
                ans->value.index == 5)
        << ans->value.index;
  }
}

TEST(GkSummaryTest, ConstantStream) {
  const GkSummary s = Build(std::vector<Element>(5000, Element{42}), 0.01);
  ExpectWellFormed(s, "constant");
  for (double q = 0.01; q < 1; q += 0.07) {
    const auto ans = s.Quantile(q);
    ASSERT_TRUE(ans.has_value());
    EXPECT_EQ(ans->value.index, 42);
  }
}

TEST(GkSummaryTest, SortedQuarter) {
  std::vector<Element> xs;
  for (int64_t v = 1; v <= 1000; ++v) xs.push_back(Element{v});
  const GkSummary s = Build(xs, 0.01);
  const auto ans = s.Quantile(0.25);
  ASSERT_TRUE(ans.has_value());
  EXPECT_GE(ans->value.index, 240);
  EXPECT_LE(ans->value.index, 260);
}

TEST(GkSummaryTest, NoMergeKeepsSortedMultiset) {
  // n = 200 < 1 / (2 alpha) = 500: compress never fires.
  auto xs = MakeStream(StreamKind::kUniform, 200, Universe(0, 1, 64), 3);
  const GkSummary s = Build(xs, 0.001);
  std::sort(xs.begin(), xs.end());
  ASSERT_EQ(s.size(), xs.size());
  int64_t sum = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(s.tuples()[i].value, xs[i]);
    sum += s.tuples()[i].g;
  }
  EXPECT_EQ(sum, 200);
}

TEST(GkSummaryTest, RankBoundsEndpoints) {
  const Universe u(0, 1, 1 << 16);
  const GkSummary s =
      Build(MakeStream(StreamKind::kUniform, 5000, u, 8), 0.01);
  EXPECT_EQ(s.RankBounds(0), (RankInterval{1, 1}));
  EXPECT_EQ(s.RankBounds(s.size() - 1), (RankInterval{5000, 5000}));
  for (size_t i = 0; i < s.size(); ++i) {
    const RankInterval r = s.RankBounds(i);
    EXPECT_GE(r.lo, 1);
    EXPECT_LE(r.hi, 5000);
  }
  EXPECT_THROW(s.RankBounds(s.size()), std::out_of_range);
}

TEST(GkSummaryTest, QuantilePreconditions) {
  GkSummary empty(0.1);
  EXPECT_THROW(empty.Quantile(0.5), std::invalid_argument);
  GkSummary one(0.1);
  one.Add(Element{3});
  EXPECT_THROW(one.Quantile(0.0), std::invalid_argument);
  EXPECT_THROW(one.Quantile(1.0), std::invalid_argument);
  EXPECT_EQ(one.Quantile(0.5)->value.index, 3);
}

// Checked after every compress, not only at the end.
TEST(GkSummaryTest, InvariantsHoldThroughoutStream) {
  const Universe u(-10, 10, 1 << 20);
  for (StreamKind kind : AllKinds()) {
    for (int64_t n : {1000, 10000}) {
      for (double alpha : {1e-2, 1e-3}) {
        const auto xs = MakeStream(kind, n, u, 1000 + n);
        GkSummary s(alpha);
        int64_t compressions = 0;
        for (Element x : xs) {
          if ((s.count() + 1) % s.compress_period() == 0) {
            s.Compress();
            ++compressions;
            ExpectWellFormed(s, KindName(kind) + " n=" + std::to_string(n) +
                                    " at " + std::to_string(s.count()));
            if (HasFatalFailure()) return;
          }
          s.Insert(x);
        }
        EXPECT_GT(compressions, 0);
      }
    }
  }
}

// Every stored tuple's bounds bracket the stable position of the item it
// holds: that position lies in [#below + 1, #at-or-below]. With distinct
// values the position is exact and must lie inside the bounds.
TEST(GkSummaryTest, RankBoundsAreSoundAgainstOracle) {
  const Universe small(0, 1, 500);  // many repeats
  const Universe large(0, 1, int64_t{1} << 40);  // effectively distinct
  for (const Universe* u : {&small, &large}) {
    for (StreamKind kind : AllKinds()) {
      const auto xs = MakeStream(kind, 10000, *u, 77);
      const GkSummary s = Build(xs, 0.005);
      const ExactDataset d(xs);
      int64_t r = 0;
      for (const SketchTuple& t : s.tuples()) {
        r += t.g;
        const RankInterval truth = ExactRankInterval(d, t.value);
        ASSERT_LE(r, truth.hi) << KindName(kind);
        ASSERT_GE(r + t.delta, truth.lo + 1) << KindName(kind);
        if (truth.hi == truth.lo + 1) {
          ASSERT_TRUE((RankInterval{r, r + t.delta}).Contains(truth.hi));
        }
      }
    }
  }
}

TEST(GkSummaryTest, QuantileIsApproximateAgainstOracle) {
  const Universe u(0, 1, 1 << 20);
  for (StreamKind kind : AllKinds()) {
    for (double alpha : {0.01, 0.002}) {
      const auto xs = MakeStream(kind, 10000, u, 5);
      const GkSummary s = Build(xs, alpha);
      const ExactDataset d(xs);
      for (int k = 1; k <= 99; ++k) {
        const double q = k / 100.0;
        const auto ans = s.Quantile(q);
        ASSERT_TRUE(ans.has_value()) << KindName(kind) << " q=" << q;
        EXPECT_TRUE(IsApproxQuantile(d, ans->value, q, alpha))
            << KindName(kind) << " q=" << q;
      }
    }
  }
}

TEST(GkSummaryTest, SizeGrowsSublinearly) {
  const Universe u(0, 1, 1 << 20);
  for (double alpha : {1e-2, 1e-3}) {
    const auto small = Build(MakeStream(StreamKind::kUniform, 25000, u, 1), alpha);
    const auto big = Build(MakeStream(StreamKind::kUniform, 100000, u, 1), alpha);
    EXPECT_LE(static_cast<double>(big.size()),
              1.6 * static_cast<double>(small.size()))
        << "alpha " << alpha;
  }
}

TEST(GkSummaryTest, SortedStreamSizeBound) {
  const Universe u(0, 1, 1 << 20);
  const GkSummary s =
      Build(MakeStream(StreamKind::kSorted, 100000, u, 2), 0.01);
  EXPECT_LE(static_cast<double>(s.size()),
            40.0 * 100.0 * std::log(0.01 * 100000));
}

}  // namespace
}  // namespace dpq
