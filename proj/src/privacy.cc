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

#include "dpq/privacy.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpq {

void PrivacyParams::Validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
  if (!(sensitivity > 0) || !std::isfinite(sensitivity)) {
    throw std::invalid_argument("sensitivity must be positive and finite");
  }
  if (!(beta > 0) || beta > 1) {
    throw std::invalid_argument("beta must lie in (0, 1]");
  }
}

std::vector<PrivacyParams> SplitBudget(const PrivacyParams& params,
                                       int64_t parts) {
  params.Validate();
  if (parts < 1) throw std::invalid_argument("budget split needs parts >= 1");
  PrivacyParams share = params;
  share.epsilon = params.epsilon / static_cast<double>(parts);
  return std::vector<PrivacyParams>(static_cast<size_t>(parts), share);
}

double GkSensitivity(double alpha, int64_t n) {
  if (!(alpha > 0) || alpha >= 1) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (static_cast<double>(n) <= 1.0 / alpha) {
    throw std::domain_error("sensitivity bound needs n > 1/alpha (n = " +
                            std::to_string(n) + ")");
  }
  return 4.0 * alpha * static_cast<double>(n) + 2.0;
}

}  // namespace dpq
