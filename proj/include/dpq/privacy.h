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

#ifndef DPQ_PRIVACY_H_
#define DPQ_PRIVACY_H_

#include <cstdint>
#include <vector>

namespace dpq {

// Pure epsilon-DP parameters for one mechanism invocation.
//
// `beta` is a failure probability used only in accuracy analysis; no
// mechanism consumes it. `sensitivity` is the global sensitivity of the
// utility (or query) the budget is spent on.
struct PrivacyParams {
  double epsilon = 1.0;
  double beta = 0.1;
  double sensitivity = 1.0;

  // Throws std::invalid_argument on epsilon <= 0, sensitivity <= 0 or
  // beta outside (0, 1].
  void Validate() const;
};

// Splits the budget into `parts` equal shares; by basic composition the
// sequence of `parts` releases is epsilon-DP overall.
std::vector<PrivacyParams> SplitBudget(const PrivacyParams& params,
                                       int64_t parts);

// Swap-neighbor sensitivity of the sketch-derived quantile utility,
// 4 * alpha * n + 2. The bound is only established for n > 1 / alpha;
// smaller n throws std::domain_error.
double GkSensitivity(double alpha, int64_t n);

}  // namespace dpq

#endif  // DPQ_PRIVACY_H_
