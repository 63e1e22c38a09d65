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

#include "dpq/oracles.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpq {

ExactDataset::ExactDataset(std::vector<Element> data) : sorted_(std::move(data)) {
  std::sort(sorted_.begin(), sorted_.end());
}

void ExactDataset::Add(Element x) {
  sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), x), x);
}

RankInterval ExactRankInterval(const ExactDataset& d, Element x) {
  const auto& s = d.sorted();
  const auto lo = std::lower_bound(s.begin(), s.end(), x) - s.begin();
  const auto hi = std::upper_bound(s.begin(), s.end(), x) - s.begin();
  return RankInterval{lo, hi};
}

Element ExactQuantile(const ExactDataset& d, double q) {
  if (d.size() == 0) throw std::invalid_argument("quantile of empty dataset");
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  auto r = static_cast<int64_t>(std::ceil(q * static_cast<double>(d.size())));
  r = std::clamp<int64_t>(r, 1, d.size());
  return d.sorted()[static_cast<size_t>(r - 1)];
}

bool IsApproxQuantile(const ExactDataset& d, Element x, double q,
                      double alpha) {
  const double n = static_cast<double>(d.size());
  const double r = std::ceil(q * n);
  const RankInterval ri = ExactRankInterval(d, x);
  return static_cast<double>(ri.lo) <= r + alpha * n &&
         static_cast<double>(ri.hi) >= r - alpha * n;
}

std::vector<double> ExplicitEmDistribution(std::span<const double> scores,
                                           double epsilon, double divisor) {
  if (scores.empty()) return {};
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(epsilon * (scores[i] - top) / divisor);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

double TotalVariation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("length mismatch");
  double sum = 0;
  for (size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

}  // namespace dpq
