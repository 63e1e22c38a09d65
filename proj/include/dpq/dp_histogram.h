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

#ifndef DPQ_DP_HISTOGRAM_H_
#define DPQ_DP_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dpq/gk_sketch.h"
#include "dpq/random.h"
#include "dpq/universe.h"

namespace dpq {

// Disjoint bins [e_0, e_1), [e_1, e_2), ..., [e_{K-1}, e_K] covering
// [e_0, e_K]. Values outside are clamped into the first or last bin.
class HistogramSpec {
 public:
  // Throws std::invalid_argument unless edges has at least two entries and
  // is strictly increasing.
  explicit HistogramSpec(std::vector<double> edges);

  static HistogramSpec Uniform(double lo, double hi, int64_t bins);
  // ceil((hi - lo) / width) equal bins.
  static HistogramSpec FromWidth(double lo, double hi, double width);
  // Default binning for approximation alpha: width (hi - lo) * alpha / 2.
  static HistogramSpec ForAlpha(const Universe& universe, double alpha);

  int64_t bins() const { return static_cast<int64_t>(edges_.size()) - 1; }
  const std::vector<double>& edges() const { return edges_; }
  double left_edge(int64_t bin) const { return edges_[bin]; }
  double midpoint(int64_t bin) const {
    return 0.5 * (edges_[bin] + edges_[bin + 1]);
  }
  int64_t BinOf(double value) const;

 private:
  std::vector<double> edges_;
};

struct CdfEntry {
  double label = 0;           // left edge of the bin
  double cumulative = 0;      // sum of clamped noisy counts up to this bin
  double representative = 0;  // bin midpoint snapped to the universe grid
};

// Cumulative noisy histogram. Cumulative counts are non-decreasing.
struct NoisyCdf {
  std::vector<CdfEntry> entries;
};

// Exact per-bin counts of raw values.
std::vector<int64_t> BinCounts(std::span<const double> values,
                               const HistogramSpec& spec);

// Per-bin counts from a summary: g_i units of mass at v_i for every tuple;
// delta is ignored.
std::vector<int64_t> SketchBinCounts(const GkSummary& summary,
                                     const Universe& universe,
                                     const HistogramSpec& spec);

// Adds Laplace(0, 2/epsilon) to every bin of the summary histogram, clamps
// each noisy count at zero and accumulates. One item changes at most two
// bins by one, so the released counts are epsilon-DP.
NoisyCdf BuildNoisyCdf(const GkSummary& summary, const Universe& universe,
                       const HistogramSpec& spec, double epsilon,
                       RandomSource& rng);

// Same construction from already-binned counts.
NoisyCdf NoisyCdfFromCounts(std::span<const int64_t> counts,
                            const HistogramSpec& spec, const Universe& universe,
                            double epsilon, RandomSource& rng);

// Entry of the first bin whose cumulative count exceeds ceil(q * n), or the
// last entry if none does. Throws std::invalid_argument on an empty CDF or
// q outside (0, 1).
const CdfEntry& HistQuantileEntry(const NoisyCdf& cdf, double q, int64_t n);

double HistQuantile(const NoisyCdf& cdf, double q, int64_t n);

// Answers ascending qs in one scan. Outputs are non-decreasing. Throws
// std::invalid_argument if qs is not sorted.
std::vector<double> HistAllQuantiles(const NoisyCdf& cdf,
                                     std::span<const double> qs, int64_t n);

}  // namespace dpq

#endif  // DPQ_DP_HISTOGRAM_H_
