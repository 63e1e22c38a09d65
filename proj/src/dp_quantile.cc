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

#include "dpq/dp_quantile.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpq/rank_intervals.h"

namespace dpq {

namespace {

// Streaming argmax over Gumbel-perturbed segment scores.
class GumbelArgmax {
 public:
  GumbelArgmax(double scale, RandomSource& rng) : scale_(scale), rng_(rng) {}

  void Offer(Element first, int64_t cardinality, int64_t utility) {
    double score = scale_ * static_cast<double>(utility);
    if (cardinality > 1) score += std::log(static_cast<double>(cardinality));
    score += SampleGumbel(rng_);
    if (score > best_score_) {
      best_score_ = score;
      best_first_ = first;
      best_cardinality_ = cardinality;
    }
  }

  Element Draw() {
    if (best_cardinality_ <= 1) return best_first_;
    const auto offset = static_cast<int64_t>(
        rng_.UniformInt(static_cast<uint64_t>(best_cardinality_)));
    return Element{best_first_.index + offset};
  }

 private:
  double scale_;
  RandomSource& rng_;
  double best_score_ = -std::numeric_limits<double>::infinity();
  Element best_first_;
  int64_t best_cardinality_ = 0;
};

}  // namespace

void MechanismConfig::Validate() const {
  privacy.Validate();
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  if (!(divisor() > 0) || !std::isfinite(divisor())) {
    throw std::invalid_argument("exponent divisor must be positive");
  }
}

MechanismConfig MechanismConfig::ForSketch(double epsilon, double q,
                                           double alpha, int64_t n) {
  MechanismConfig config;
  config.privacy.epsilon = epsilon;
  config.privacy.sensitivity = GkSensitivity(alpha, n);
  config.q = q;
  return config;
}

Element DpQuantileGk(const GkSummary& summary, const Universe& universe,
                     const MechanismConfig& config, RandomSource& rng) {
  config.Validate();
  const AugmentedSummary augmented(summary);
  const TargetQuantile target = TargetQuantile::For(config.q, summary.count());
  GumbelArgmax argmax(config.privacy.epsilon / config.divisor(), rng);
  augmented.ForEachSegment(universe, target, [&](const ScoredSegment& s) {
    argmax.Offer(s.first, s.cardinality, s.utility);
  });
  return argmax.Draw();
}

std::vector<Element> DpQuantilesMulti(const GkSummary& summary,
                                      const Universe& universe,
                                      std::span<const double> qs,
                                      const PrivacyParams& params,
                                      RandomSource& rng,
                                      std::optional<double> exponent_divisor) {
  if (qs.empty()) throw std::invalid_argument("need at least one quantile");
  const std::vector<PrivacyParams> shares =
      SplitBudget(params, static_cast<int64_t>(qs.size()));
  std::vector<Element> out;
  out.reserve(qs.size());
  for (size_t i = 0; i < qs.size(); ++i) {
    MechanismConfig config;
    config.privacy = shares[i];
    config.q = qs[i];
    config.exponent_divisor = exponent_divisor;
    RandomSource child = rng.Split(std::bit_cast<uint64_t>(qs[i]));
    out.push_back(DpQuantileGk(summary, universe, config, child));
  }
  return out;
}

Element DpQuantileFull(std::span<const Element> data, const Universe& universe,
                       double q, double epsilon, RandomSource& rng) {
  if (data.empty()) throw std::invalid_argument("full-space quantile of empty data");
  PrivacyParams privacy;
  privacy.epsilon = epsilon;
  privacy.sensitivity = 1.0;
  privacy.Validate();

  std::vector<Element> copy;
  if (!std::is_sorted(data.begin(), data.end())) {
    copy.assign(data.begin(), data.end());
    std::sort(copy.begin(), copy.end());
    data = copy;
  }
  const auto n = static_cast<int64_t>(data.size());
  const TargetQuantile target = TargetQuantile::For(q, n);
  GumbelArgmax argmax(epsilon / (2.0 * privacy.sensitivity), rng);

  std::optional<Element> left;
  int64_t below = 0;  // #{x < current}
  size_t i = 0;
  while (i <= data.size()) {
    const std::optional<Element> right =
        i < data.size() ? std::optional<Element>(data[i]) : std::nullopt;
    // Gap strictly between consecutive distinct values: every element there
    // has rank interval [below, below].
    const int64_t gap = universe.SegmentCardinality(left, right);
    if (gap > 0) {
      argmax.Offer(Element{left ? left->index + 1 : 0}, gap,
                   IntervalUtility(RankInterval{below, below},
                                   target.target_rank));
    }
    if (!right) break;
    size_t j = i;
    while (j < data.size() && data[j] == *right) ++j;
    const auto at_or_below = static_cast<int64_t>(j);
    argmax.Offer(*right, 1,
                 IntervalUtility(RankInterval{below, at_or_below},
                                 target.target_rank));
    below = at_or_below;
    left = right;
    i = j;
  }
  return argmax.Draw();
}

}  // namespace dpq
