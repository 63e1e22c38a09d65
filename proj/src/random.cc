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

#include "dpq/random.h"

#include <cmath>
#include <stdexcept>

namespace dpq {

namespace {

std::mt19937_64 MakeEngine(uint64_t seed) {
  // seed_seq's mixing algorithm is specified by the standard, so this is
  // portable across library implementations.
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(uint64_t seed)
    : seed_(seed), engine_(MakeEngine(seed)) {}

RandomSource RandomSource::Split(uint64_t key) const {
  return RandomSource(MixBits(seed_ ^ MixBits(key)));
}

double RandomSource::UniformOpen() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

uint64_t RandomSource::UniformInt(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformInt bound must be > 0");
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

double GumbelFromUniform(double u) { return -std::log(-std::log(u)); }

double SampleGumbel(RandomSource& rng) {
  return GumbelFromUniform(rng.UniformOpen());
}

double SampleLaplace(RandomSource& rng, double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw std::invalid_argument("Laplace scale must be positive and finite");
  }
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

}  // namespace dpq
