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

#ifndef DPQ_DP_QUANTILE_H_
#define DPQ_DP_QUANTILE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpq/gk_sketch.h"
#include "dpq/privacy.h"
#include "dpq/random.h"
#include "dpq/universe.h"

namespace dpq {

// Divisor of the unscaled variant, which weights elements by
// exp(epsilon * u / 2) regardless of sensitivity. Only epsilon-DP when the
// utility has sensitivity 1; exposed for comparing against published
// numbers produced that way.
inline constexpr double kUnscaledDivisor = 2.0;

// Exponential mechanism parameters. Elements are weighted by
// exp(epsilon * utility / divisor()), where the divisor defaults to
// 2 * privacy.sensitivity.
struct MechanismConfig {
  PrivacyParams privacy;
  double q = 0.5;
  std::optional<double> exponent_divisor;

  double divisor() const {
    return exponent_divisor.value_or(2.0 * privacy.sensitivity);
  }
  // Throws std::invalid_argument on invalid privacy params, q outside
  // (0, 1) or a non-positive divisor.
  void Validate() const;

  // Config for a summary with approximation `alpha` over n items, with the
  // sketch-utility sensitivity 4 alpha n + 2.
  static MechanismConfig ForSketch(double epsilon, double q, double alpha,
                                   int64_t n);
};

// Samples from the exponential mechanism over every element of `universe`
// with the sketch-derived utility, without touching elements one by one:
// each tuple value scores epsilon*u/divisor, each non-empty gap between
// stored values scores ln|gap| + epsilon*u/divisor, a standard Gumbel draw
// is added to each score and the argmax wins. A winning gap yields a
// uniform element of the gap. Only the running best is kept.
//
// Throws std::invalid_argument on an empty summary or invalid config.
Element DpQuantileGk(const GkSummary& summary, const Universe& universe,
                     const MechanismConfig& config, RandomSource& rng);

// One release per q, each at epsilon / |qs|, so the whole call is
// epsilon-DP by basic composition. Each q draws from rng.Split(bits of q),
// which makes the answer for q independent of its position in `qs`.
// `params.sensitivity` is used as the utility sensitivity for every call.
std::vector<Element> DpQuantilesMulti(const GkSummary& summary,
                                      const Universe& universe,
                                      std::span<const double> qs,
                                      const PrivacyParams& params,
                                      RandomSource& rng,
                                      std::optional<double> exponent_divisor =
                                          std::nullopt);

// Full-space baseline: exponential mechanism with utility
// -d(ceil(qn), [#{x < e}, #{x <= e}]) over the complete data, sensitivity 1
// and divisor 2. `data` need not be sorted; sorted input avoids a copy.
//
// Throws std::invalid_argument on empty data.
Element DpQuantileFull(std::span<const Element> data, const Universe& universe,
                       double q, double epsilon, RandomSource& rng);

}  // namespace dpq

#endif  // DPQ_DP_QUANTILE_H_
