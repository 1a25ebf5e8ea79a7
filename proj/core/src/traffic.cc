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

#include "linksparse/traffic.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "linksparse/errors.h"
#include "linksparse/graph_io.h"
#include "linksparse/parallel.h"
#include "linksparse/scheduler.h"

namespace linksparse {

namespace {

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace

double TrafficConfig::MeanRate() const {
  if (rate_spread == 0.0) return std::clamp(rate_mean, rate_min, rate_max);
  const double a = (rate_min - rate_mean) / rate_spread;
  const double b = (rate_max - rate_mean) / rate_spread;
  const double fa = NormalCdf(a);
  const double fb = NormalCdf(b);
  return rate_min * fa + rate_max * (1.0 - fb) + rate_mean * (fb - fa) +
         rate_spread * (NormalPdf(a) - NormalPdf(b));
}

void TrafficConfig::Validate() const {
  if (!(mu >= 0.0 && mu < 1.0)) throw ParameterError("traffic load mu must be in [0, 1)");
  if (!(rate_spread >= 0.0)) throw ParameterError("rate spread must be >= 0");
  if (!(rate_min >= 0.0 && rate_min <= rate_max)) {
    throw ParameterError("rate clip interval must satisfy 0 <= min <= max");
  }
}

double SampleRate(Rng& rng, const TrafficConfig& cfg) {
  const double r = cfg.rate_mean + cfg.rate_spread * StandardNormal(rng);
  return std::clamp(r, cfg.rate_min, cfg.rate_max);
}

std::vector<double> SampleRates(Rng& rng, VertexId n, const TrafficConfig& cfg) {
  std::vector<double> rates(n);
  for (auto& r : rates) r = SampleRate(rng, cfg);
  return rates;
}

std::int64_t SampleArrivals(Rng& rng, double lambda) { return Poisson(rng, lambda); }

std::vector<double> Utilities(const QueueState& state, std::span<const double> rates) {
  std::vector<double> u(state.q.size());
  for (std::size_t v = 0; v < u.size(); ++v) u[v] = Utility(state.q[v], rates[v]);
  return u;
}

StepResult Step(const ConflictGraph& g, const QueueState& state,
                const VertexSet& schedule, std::span<const double> rates,
                std::span<const std::int64_t> arrivals) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (state.q.size() != n || rates.size() != n || arrivals.size() != n ||
      schedule.universe() != g.num_vertices()) {
    throw ContractError("queue step: vector lengths do not match the graph");
  }
  if (!IsIndependent(g, schedule)) {
    throw ContractError("queue step: schedule is not an independent set");
  }
  StepResult out;
  out.next.q = state.q;
  out.next.t = state.t + 1;
  out.delivered.assign(n, 0);
  out.arrivals.assign(arrivals.begin(), arrivals.end());
  for (VertexId v : schedule.members()) {
    const auto capacity = static_cast<std::int64_t>(std::floor(std::max(rates[v], 0.0)));
    out.delivered[v] = std::min(state.q[v], capacity);
    out.next.q[v] -= out.delivered[v];
  }
  for (std::size_t v = 0; v < n; ++v) out.next.q[v] += arrivals[v];
  return out;
}

StepResult Step(const ConflictGraph& g, const QueueState& state,
                const VertexSet& schedule, std::span<const double> rates, Rng& rng,
                const TrafficConfig& cfg) {
  const double lambda = cfg.ArrivalRate();
  std::vector<std::int64_t> arrivals(state.q.size());
  for (auto& a : arrivals) a = SampleArrivals(rng, lambda);
  return Step(g, state, schedule, rates, arrivals);
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw ParameterError("empirical distribution needs samples");
  for (double x : samples_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ParameterError("utility samples must be finite and non-negative");
    }
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::Quantile(double eta) const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("quantile level must be in [0, 1]");
  if (samples_.empty()) throw ParameterError("empty empirical distribution");
  if (eta == 0.0) return 0.0;
  const double n = static_cast<double>(samples_.size());
  auto k = static_cast<std::size_t>(std::ceil(eta * n));
  k = std::clamp<std::size_t>(k, 1, samples_.size());
  return samples_[k - 1];
}

double EmpiricalDistribution::SmallestPositive() const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), 0.0);
  return it == samples_.end() ? 0.0 : *it;
}

double EmpiricalDistribution::Sample(Rng& rng) const {
  if (samples_.empty()) throw ParameterError("empty empirical distribution");
  return samples_[UniformIndex(rng, samples_.size())];
}

std::vector<double> EmpiricalDistribution::SampleMany(Rng& rng, std::size_t count) const {
  std::vector<double> out(count);
  for (auto& x : out) x = Sample(rng);
  return out;
}

EmpiricalDistribution CollectEcdf(std::span<const ConflictGraph> graphs,
                                  const TrafficConfig& cfg, int slots, Rng& rng) {
  if (graphs.empty()) throw ParameterError("eCDF collection needs at least one graph");
  if (slots < 1) throw ParameterError("eCDF collection needs at least one slot");
  cfg.Validate();
  const std::uint64_t base = rng();
  std::vector<std::vector<double>> pools(graphs.size());
  ParallelFor(graphs.size(), [&](std::size_t i) {
    const ConflictGraph& g = graphs[i];
    Rng local(DeriveSeed(base, i));
    auto state = QueueState::Empty(g.num_vertices());
    auto& pool = pools[i];
    pool.reserve(static_cast<std::size_t>(g.num_vertices()) * slots);
    for (int t = 0; t < slots; ++t) {
      const auto rates = SampleRates(local, g.num_vertices(), cfg);
      const auto u = Utilities(state, rates);
      pool.insert(pool.end(), u.begin(), u.end());
      const auto schedule = LocalGreedySchedule(g, u);
      state = Step(g, state, schedule.selected, rates, local, cfg).next;
    }
  });
  std::vector<double> all;
  std::size_t total = 0;
  for (const auto& p : pools) total += p.size();
  all.reserve(total);
  for (auto& p : pools) {
    all.insert(all.end(), p.begin(), p.end());
    std::vector<double>().swap(p);
  }
  return EmpiricalDistribution(std::move(all));
}

std::string EcdfFingerprint(const EmpiricalDistribution& d) {
  const auto& s = d.samples();
  return FingerprintHex(Fingerprint(std::string_view(
      reinterpret_cast<const char*>(s.data()), s.size() * sizeof(double))));
}

void WriteEcdfFile(const std::filesystem::path& path, const EmpiricalDistribution& d,
                   const EcdfFileHeader& header) {
  std::string text;
  text.reserve(d.size() * 12 + 256);
  const auto& t = header.traffic;
  text += "# ecdf pool_size=" + std::to_string(d.size()) + " mu=" + FormatDouble(t.mu) +
          " rate_mean=" + FormatDouble(t.rate_mean) +
          " rate_spread=" + FormatDouble(t.rate_spread) +
          " rate_min=" + FormatDouble(t.rate_min) + " rate_max=" + FormatDouble(t.rate_max) +
          " slots=" + std::to_string(header.slots) + " source=" +
          header.source_fingerprint + "\n";
  for (double x : d.samples()) {
    text += FormatDouble(x);
    text += '\n';
  }
  WriteTextFile(path, text);
}

EmpiricalDistribution ReadEcdfFile(const std::filesystem::path& path,
                                   EcdfFileHeader* header) {
  const std::string text = ReadTextFile(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ecdf", 0) != 0) {
    throw DataError(path.string() + ": missing eCDF header line");
  }
  EcdfFileHeader h;
  std::istringstream fields(line.substr(6));
  std::string kv;
  try {
    while (fields >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (key == "pool_size") h.pool_size = std::stoull(value);
      else if (key == "mu") h.traffic.mu = std::stod(value);
      else if (key == "rate_mean") h.traffic.rate_mean = std::stod(value);
      else if (key == "rate_spread") h.traffic.rate_spread = std::stod(value);
      else if (key == "rate_min") h.traffic.rate_min = std::stod(value);
      else if (key == "rate_max") h.traffic.rate_max = std::stod(value);
      else if (key == "slots") h.slots = std::stoi(value);
      else if (key == "source") h.source_fingerprint = value;
    }
  } catch (const std::exception&) {
    throw DataError(path.string() + ": malformed eCDF header");
  }
  std::vector<double> samples;
  samples.reserve(h.pool_size);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), x);
    if (ec != std::errc()) throw DataError(path.string() + ": bad sample \"" + line + "\"");
    samples.push_back(x);
  }
  if (samples.size() != h.pool_size) {
    throw DataError(path.string() + ": header says " + std::to_string(h.pool_size) +
                    " samples, file has " + std::to_string(samples.size()));
  }
  if (header) *header = h;
  try {
    return EmpiricalDistribution(std::move(samples));
  } catch (const ParameterError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace linksparse
