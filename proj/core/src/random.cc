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

#include "linksparse/random.h"

#include <algorithm>
#include <cmath>

#include "linksparse/errors.h"

namespace linksparse {

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return MixSeed(MixSeed(seed) ^ MixSeed(index + 0x632be59bd9b4e019ULL));
}

double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  // Rejection sampling removes the modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

bool Bernoulli(Rng& rng, double p) { return UniformUnit(rng) < p; }

double StandardNormal(Rng& rng) {
  // Marsaglia polar method; the second variate is discarded so the stream
  // position depends only on the number of calls.
  for (;;) {
    const double a = 2.0 * UniformUnit(rng) - 1.0;
    const double b = 2.0 * UniformUnit(rng) - 1.0;
    const double s = a * a + b * b;
    if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
  }
}

std::int64_t Poisson(Rng& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("Poisson rate must be finite and >= 0");
  }
  constexpr double kChunk = 16.0;
  std::int64_t total = 0;
  while (lambda > 0.0) {
    const double part = std::min(lambda, kChunk);
    lambda -= part;
    const double limit = std::exp(-part);
    double prod = UniformUnit(rng);
    while (prod > limit) {
      ++total;
      prod *= UniformUnit(rng);
    }
  }
  return total;
}

}  // namespace linksparse
