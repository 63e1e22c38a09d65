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

#ifndef DPQ_RANDOM_H_
#define DPQ_RANDOM_H_

#include <cstdint>
#include <random>

namespace dpq {

// Seeded, splittable source of randomness.
//
// Draw sequences are a pure function of the seed: the engine is
// std::mt19937_64, whose output sequence is fixed by the standard, and all
// conversions to doubles and bounded integers are done here rather than by
// the implementation-defined std:: distributions. Split() derives an
// independent child source from (seed, key) without advancing the parent,
// so parallel trials can each own a reproducible stream.
//
// A RandomSource is not thread-safe; give each thread its own split.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed);

  uint64_t seed() const { return seed_; }

  // Child source keyed by `key`. Same (seed, key) => same child stream.
  RandomSource Split(uint64_t key) const;

  uint64_t NextBits() { return engine_(); }

  // Uniform double on the open interval (0, 1), 53 bits of precision.
  double UniformOpen();

  // Uniform integer on [0, bound). Requires bound > 0.
  uint64_t UniformInt(uint64_t bound);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// Standard Gumbel(0, 1) as a function of a uniform draw u in (0, 1).
double GumbelFromUniform(double u);

// One standard Gumbel(0, 1) draw, -ln(-ln(U)).
double SampleGumbel(RandomSource& rng);

// One Laplace(0, scale) draw by inverse CDF. Throws std::invalid_argument
// unless scale > 0.
double SampleLaplace(RandomSource& rng, double scale);

// SplitMix64 finalizer; used for seed derivation.
uint64_t MixBits(uint64_t x);

}  // namespace dpq

#endif  // DPQ_RANDOM_H_
