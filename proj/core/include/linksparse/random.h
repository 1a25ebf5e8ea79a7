// Copyright 2026 The linksparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINKSPARSE_RANDOM_H_
#define LINKSPARSE_RANDOM_H_

#include <cstdint>
#include <random>

namespace linksparse {

// All randomness flows through this engine. The distributions below are
// implemented here rather than taken from <random> because the standard
// distributions are implementation-defined, and seeded runs must produce
// identical datasets and CSVs with any standard library.
using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t MixSeed(std::uint64_t x);

// Seed for the `index`-th child stream of `seed`.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// Uniform in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// Uniform integer in [0, n). Requires n > 0.
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

bool Bernoulli(Rng& rng, double p);

double StandardNormal(Rng& rng);

// Exact Poisson sampler (product-of-uniforms, split into chunks of mean at
// most 16 for large rates).
std::int64_t Poisson(Rng& rng, double lambda);

// Fisher-Yates with UniformIndex.
template <typename It>
void Shuffle(It first, It last, Rng& rng) {
  auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    auto j = UniformIndex(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace linksparse

#endif  // LINKSPARSE_RANDOM_H_
