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

#ifndef DPQ_CONTINUAL_H_
#define DPQ_CONTINUAL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dpq/gk_sketch.h"
#include "dpq/random.h"
#include "dpq/universe.h"

namespace dpq {

struct ContinualConfig {
  double alpha = 0.1;
  double epsilon = 1.0;
  double q = 0.5;
  int64_t n_max = 0;  // declared stream horizon
  double beta = 0.1;
  // Passed through to each one-shot release; see MechanismConfig.
  std::optional<double> exponent_divisor;
};

// Release schedule derived from a config. Depends only on public
// parameters, never on data.
struct ContinualPlan {
  double alpha_star = 0;   // alpha / 2, used by the summary and releases
  double eps_star = 0;     // epsilon / k_max per release
  int64_t n_min = 0;       // first checkpoint
  int64_t k_max = 0;       // bound on the number of releases
};

// ceil(log_{1 + alpha/2}(n_max / n_min)) + 1. Requires 1 <= n_min <= n_max.
int64_t CheckpointBudget(int64_t n_min, int64_t n_max, double alpha);

// Stream positions (1-based) at which a release happens, up to n_max:
// ceil(cp) for cp = n_min, n_min (1 + alpha/2), ... Positions that would
// repeat are skipped.
std::vector<int64_t> CheckpointIndices(int64_t n_min, int64_t n_max,
                                       double alpha);

// Chooses the smallest k_max consistent with its own n_min:
//   n_min = max(ceil(ln(|X| / beta) / (12 alpha* eps*)), floor(1/alpha*) + 1)
//   eps*  = epsilon / k_max,   k_max >= CheckpointBudget(n_min, n_max, alpha).
// Throws std::invalid_argument if no such plan fits within n_max.
ContinualPlan PlanContinual(const ContinualConfig& config,
                            const Universe& universe);

// Maintains a private approximate q-quantile at every stream position.
// Items go into an alpha/2 summary; at each checkpoint a fresh one-shot
// release at eps* replaces the held value, otherwise the previous release is
// repeated. At most k_max releases are made and none past n_max.
class ContinualQuantile {
 public:
  ContinualQuantile(const ContinualConfig& config, const Universe& universe);

  // Consumes one item and returns the held release, or nullopt before the
  // first checkpoint.
  std::optional<Element> Observe(Element x, RandomSource& rng);

  const ContinualPlan& plan() const { return plan_; }
  int64_t seen() const { return seen_; }
  int64_t releases() const { return releases_; }
  double next_checkpoint() const { return checkpoint_; }
  bool released_last() const { return released_last_; }
  const std::optional<Element>& current() const { return current_; }
  const GkSummary& summary() const { return summary_; }

 private:
  ContinualConfig config_;
  Universe universe_;
  ContinualPlan plan_;
  GkSummary summary_;
  double checkpoint_;
  int64_t seen_ = 0;
  int64_t releases_ = 0;
  bool released_last_ = false;
  std::optional<Element> current_;
};

}  // namespace dpq

#endif  // DPQ_CONTINUAL_H_
