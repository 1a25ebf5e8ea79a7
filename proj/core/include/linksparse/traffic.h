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

#ifndef LINKSPARSE_TRAFFIC_H_
#define LINKSPARSE_TRAFFIC_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "linksparse/graph.h"
#include "linksparse/random.h"

namespace linksparse {

/// Per-link traffic model: one 1-hop flow per link, Poisson arrivals and an
/// i.i.d. clipped-normal link rate per slot.
struct TrafficConfig {
  double mu = 0.04;  // traffic load, lambda / E[r]
  double rate_mean = 50.0;
  double rate_spread = 25.0;  // standard deviation of the unclipped normal
  double rate_min = 0.0;
  double rate_max = 100.0;

  /// E[r] of the clipped normal.
  double MeanRate() const;
  /// lambda = mu * E[r], packets per slot.
  double ArrivalRate() const { return mu * MeanRate(); }
  /// Throws ParameterError unless mu is in [0, 1) and the rate model is sane.
  /// mu = 0 is the degenerate no-traffic configuration.
  void Validate() const;
};

struct QueueState {
  std::vector<std::int64_t> q;
  std::int64_t t = 0;

  static QueueState Empty(VertexId n) { return {std::vector<std::int64_t>(n, 0), 0}; }
};

struct StepResult {
  QueueState next;
  std::vector<std::int64_t> delivered;
  std::vector<std::int64_t> arrivals;
};

double SampleRate(Rng& rng, const TrafficConfig& cfg = {});
std::vector<double> SampleRates(Rng& rng, VertexId n, const TrafficConfig& cfg = {});
std::int64_t SampleArrivals(Rng& rng, double lambda);

inline double Utility(std::int64_t queue_length, double rate) {
  return static_cast<double>(queue_length) * rate;
}
std::vector<double> Utilities(const QueueState& state, std::span<const double> rates);

/// Deterministic core of Step() with the arrivals given.
StepResult Step(const ConflictGraph& g, const QueueState& state,
                const VertexSet& schedule, std::span<const double> rates,
                std::span<const std::int64_t> arrivals);

/// Advances one slot: scheduled links transmit min(q, floor(r)) packets, then
/// every link receives its Poisson arrivals. Throws ContractError when
/// `schedule` is not independent in g.
StepResult Step(const ConflictGraph& g, const QueueState& state,
                const VertexSet& schedule, std::span<const double> rates,
                Rng& rng, const TrafficConfig& cfg);

/// Sorted pool of observed utility values.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  /// Sorts the samples. Throws ParameterError on an empty, negative or
  /// non-finite sample.
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  /// u^(eta): 0 for eta == 0, otherwise the ceil(eta * N)-th order
  /// statistic. Throws ParameterError when eta is outside [0, 1].
  double Quantile(double eta) const;
  /// Smallest strictly positive sample, or 0 when none exists.
  double SmallestPositive() const;
  /// Uniform draw from the pool.
  double Sample(Rng& rng) const;
  std::vector<double> SampleMany(Rng& rng, std::size_t count) const;

 private:
  std::vector<double> samples_;
};

/// Simulates the vanilla greedy scheduler for `slots` slots on every graph
/// (empty initial queues) and pools every u(v, t) observed at scheduling
/// time. Throws ParameterError on an empty dataset.
EmpiricalDistribution CollectEcdf(std::span<const ConflictGraph> graphs,
                                  const TrafficConfig& cfg, int slots, Rng& rng);

/// eCDF file: "# ecdf pool_size=... mu=... rate_mean=... rate_spread=...
/// rate_min=... rate_max=... slots=... source=<hex>" header line, then one
/// sorted sample per line.
struct EcdfFileHeader {
  std::size_t pool_size = 0;
  TrafficConfig traffic;
  int slots = 0;
  std::string source_fingerprint;
};

void WriteEcdfFile(const std::filesystem::path& path,
                   const EmpiricalDistribution& d, const EcdfFileHeader& header);
EmpiricalDistribution ReadEcdfFile(const std::filesystem::path& path,
                                   EcdfFileHeader* header = nullptr);
/// Fingerprint of the sample pool itself, used by model checkpoints.
std::string EcdfFingerprint(const EmpiricalDistribution& d);

}  // namespace linksparse

#endif  // LINKSPARSE_TRAFFIC_H_
