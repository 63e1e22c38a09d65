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

#include "dpq/dp_histogram.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpq {

namespace {

int64_t RankThreshold(double q, int64_t n) {
  return static_cast<int64_t>(std::ceil(q * static_cast<double>(n)));
}

}  // namespace

HistogramSpec::HistogramSpec(std::vector<double> edges)
    : edges_(std::move(edges)) {
  if (edges_.size() < 2) {
    throw std::invalid_argument("histogram needs at least one bin");
  }
  for (size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i - 1] < edges_[i])) {
      throw std::invalid_argument("histogram edges must strictly increase");
    }
  }
}

HistogramSpec HistogramSpec::Uniform(double lo, double hi, int64_t bins) {
  if (bins < 1) throw std::invalid_argument("bin count must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("histogram range needs lo < hi");
  std::vector<double> edges(static_cast<size_t>(bins) + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (int64_t i = 0; i < bins; ++i) edges[i] = lo + width * static_cast<double>(i);
  edges.back() = hi;
  return HistogramSpec(std::move(edges));
}

HistogramSpec HistogramSpec::FromWidth(double lo, double hi, double width) {
  if (!(width > 0)) throw std::invalid_argument("bin width must be positive");
  const auto bins = static_cast<int64_t>(std::ceil((hi - lo) / width));
  return Uniform(lo, hi, std::max<int64_t>(1, bins));
}

HistogramSpec HistogramSpec::ForAlpha(const Universe& universe, double alpha) {
  return FromWidth(universe.lo(), universe.hi(),
                   (universe.hi() - universe.lo()) * alpha / 2.0);
}

int64_t HistogramSpec::BinOf(double value) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  const auto idx = static_cast<int64_t>(it - edges_.begin()) - 1;
  return std::clamp<int64_t>(idx, 0, bins() - 1);
}

std::vector<int64_t> BinCounts(std::span<const double> values,
                               const HistogramSpec& spec) {
  std::vector<int64_t> counts(static_cast<size_t>(spec.bins()), 0);
  for (double v : values) ++counts[spec.BinOf(v)];
  return counts;
}

std::vector<int64_t> SketchBinCounts(const GkSummary& summary,
                                     const Universe& universe,
                                     const HistogramSpec& spec) {
  std::vector<int64_t> counts(static_cast<size_t>(spec.bins()), 0);
  for (const SketchTuple& t : summary.tuples()) {
    counts[spec.BinOf(universe.Decode(t.value))] += t.g;
  }
  return counts;
}

NoisyCdf NoisyCdfFromCounts(std::span<const int64_t> counts,
                            const HistogramSpec& spec, const Universe& universe,
                            double epsilon, RandomSource& rng) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (static_cast<int64_t>(counts.size()) != spec.bins()) {
    throw std::invalid_argument("count vector does not match bin count");
  }
  const double scale = 2.0 / epsilon;
  NoisyCdf cdf;
  cdf.entries.reserve(counts.size());
  double running = 0;
  for (int64_t b = 0; b < spec.bins(); ++b) {
    const double noisy = std::max(
        0.0, static_cast<double>(counts[b]) + SampleLaplace(rng, scale));
    running += noisy;
    const double rep = universe.Decode(universe.Encode(spec.midpoint(b)));
    cdf.entries.push_back(CdfEntry{spec.left_edge(b), running, rep});
  }
  return cdf;
}

NoisyCdf BuildNoisyCdf(const GkSummary& summary, const Universe& universe,
                       const HistogramSpec& spec, double epsilon,
                       RandomSource& rng) {
  const std::vector<int64_t> counts = SketchBinCounts(summary, universe, spec);
  return NoisyCdfFromCounts(counts, spec, universe, epsilon, rng);
}

const CdfEntry& HistQuantileEntry(const NoisyCdf& cdf, double q, int64_t n) {
  if (cdf.entries.empty()) throw std::invalid_argument("empty CDF");
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  const auto r = static_cast<double>(RankThreshold(q, n));
  for (const CdfEntry& e : cdf.entries) {
    if (r < e.cumulative) return e;
  }
  return cdf.entries.back();
}

double HistQuantile(const NoisyCdf& cdf, double q, int64_t n) {
  return HistQuantileEntry(cdf, q, n).label;
}

std::vector<double> HistAllQuantiles(const NoisyCdf& cdf,
                                     std::span<const double> qs, int64_t n) {
  if (cdf.entries.empty()) throw std::invalid_argument("empty CDF");
  if (!std::is_sorted(qs.begin(), qs.end())) {
    throw std::invalid_argument("quantiles must be sorted ascending");
  }
  std::vector<double> out;
  out.reserve(qs.size());
  size_t bin = 0;
  for (double q : qs) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
    const auto r = static_cast<double>(RankThreshold(q, n));
    while (bin + 1 < cdf.entries.size() && !(r < cdf.entries[bin].cumulative)) {
      ++bin;
    }
    out.push_back(cdf.entries[bin].label);
  }
  return out;
}

}  // namespace dpq
