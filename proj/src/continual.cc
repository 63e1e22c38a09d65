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

#include "dpq/continual.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dpq/dp_quantile.h"

namespace dpq {

int64_t CheckpointBudget(int64_t n_min, int64_t n_max, double alpha) {
  if (n_min < 1 || n_min > n_max) {
    throw std::invalid_argument("checkpoint budget needs 1 <= n_min <= n_max");
  }
  const double steps = std::log(static_cast<double>(n_max) /
                                static_cast<double>(n_min)) /
                       std::log1p(alpha / 2.0);
  // Guard against log rounding an exact power just above an integer.
  return static_cast<int64_t>(std::ceil(steps - 1e-9)) + 1;
}

std::vector<int64_t> CheckpointIndices(int64_t n_min, int64_t n_max,
                                       double alpha) {
  std::vector<int64_t> out;
  double cp = static_cast<double>(n_min);
  while (true) {
    const auto at = static_cast<int64_t>(std::ceil(cp));
    if (at > n_max) break;
    if (out.empty() || at > out.back()) out.push_back(at);
    cp *= 1.0 + alpha / 2.0;
  }
  return out;
}

ContinualPlan PlanContinual(const ContinualConfig& config,
                            const Universe& universe) {
  if (!(config.alpha > 0) || config.alpha >= 1) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (!(config.epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(config.beta > 0) || config.beta > 1) {
    throw std::invalid_argument("beta must lie in (0, 1]");
  }
  if (config.n_max < 1) throw std::invalid_argument("n_max must be >= 1");

  ContinualPlan plan;
  plan.alpha_star = config.alpha / 2.0;
  const double log_term =
      std::log(static_cast<double>(universe.cardinality()) / config.beta);
  // Releases need n > 1/alpha* for the sketch sensitivity bound to apply.
  const auto floor_n =
      static_cast<int64_t>(std::floor(1.0 / plan.alpha_star)) + 1;

  // n_min grows with k and the budget shrinks with n_min, so the first k
  // that covers its own budget is the smallest consistent choice.
  for (int64_t k = 1;; ++k) {
    const double eps_star = config.epsilon / static_cast<double>(k);
    const double raw = log_term / (12.0 * plan.alpha_star * eps_star);
    const int64_t n_min =
        std::max(static_cast<int64_t>(std::ceil(raw)), floor_n);
    if (n_min > config.n_max) {
      throw std::invalid_argument(
          "horizon too short: first checkpoint " + std::to_string(n_min) +
          " exceeds n_max " + std::to_string(config.n_max));
    }
    if (k >= CheckpointBudget(n_min, config.n_max, config.alpha)) {
      plan.eps_star = eps_star;
      plan.n_min = n_min;
      plan.k_max = k;
      return plan;
    }
  }
}

ContinualQuantile::ContinualQuantile(const ContinualConfig& config,
                                     const Universe& universe)
    : config_(config),
      universe_(universe),
      plan_(PlanContinual(config, universe)),
      summary_(plan_.alpha_star),
      checkpoint_(static_cast<double>(plan_.n_min)) {
  if (!(config.q > 0 && config.q < 1)) {
    throw std::invalid_argument("q must lie in (0, 1)");
  }
}

std::optional<Element> ContinualQuantile::Observe(Element x,
                                                  RandomSource& rng) {
  ++seen_;
  summary_.Add(x);
  released_last_ = false;
  if (seen_ == static_cast<int64_t>(std::ceil(checkpoint_)) &&
      seen_ <= config_.n_max && releases_ < plan_.k_max) {
    // The release runs on a compressed copy so the streaming summary keeps
    // its own compression schedule.
    GkSummary snapshot = summary_;
    snapshot.Compress();
    MechanismConfig mech =
        MechanismConfig::ForSketch(plan_.eps_star, config_.q, plan_.alpha_star,
                                   seen_);
    mech.exponent_divisor = config_.exponent_divisor;
    current_ = DpQuantileGk(snapshot, universe_, mech, rng);
    ++releases_;
    released_last_ = true;
    while (static_cast<int64_t>(std::ceil(checkpoint_)) <= seen_) {
      checkpoint_ *= 1.0 + config_.alpha / 2.0;
    }
  }
  return current_;
}

}  // namespace dpq
