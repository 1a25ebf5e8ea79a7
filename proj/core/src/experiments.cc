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

#include "linksparse/experiments.h"

#include <sstream>

#include "linksparse/errors.h"
#include "linksparse/graph_io.h"
#include "linksparse/parallel.h"
#include "linksparse/random.h"

namespace linksparse {

namespace {

double RetentionRatio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

void CheckManifest(const DatasetManifest& manifest,
                   std::span<const ConflictGraph> graphs) {
  if (manifest.entries.size() != graphs.size()) {
    throw ContractError("manifest and graph list differ in length");
  }
}

}  // namespace

Ratios ComputeRatios(const ConflictGraph& g, std::span<const double> u,
                     const Schedule& vanilla, const SparseSchedule& sparse) {
  const VertexId n = g.num_vertices();
  if (vanilla.selected.universe() != n || sparse.schedule.selected.universe() != n ||
      sparse.sparse.keep.universe() != n || static_cast<VertexId>(u.size()) != n) {
    throw ContractError("metrics: vanilla and sparse runs are on different graphs");
  }
  Ratios r;
  const double dense_total = TotalWeight(u, vanilla.selected);
  const double sparse_total = TotalWeight(u, sparse.schedule.selected);
  r.ar_utility = dense_total > 0.0 ? sparse_total / dense_total : 1.0;
  r.rr_vertices = RetentionRatio(static_cast<double>(sparse.sparse.keep.size()), n);
  r.rr_avg_degree =
      RetentionRatio(AverageDegree(sparse.sparse.sparse.graph), AverageDegree(g));
  r.rr_messages = RetentionRatio(static_cast<double>(sparse.schedule.p2p_messages),
                                 static_cast<double>(vanilla.p2p_messages));
  return r;
}

std::vector<double> DefaultSweepQuantiles() {
  return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95};
}

std::vector<SweepRow> QuantileSweep(const GcnModel* model,
                                    const DatasetManifest& manifest,
                                    std::span<const ConflictGraph> graphs,
                                    const EmpiricalDistribution& ecdf,
                                    const SweepOptions& options) {
  CheckManifest(manifest, graphs);
  const std::size_t per_graph = options.etas.size() * (model ? 2 : 1);
  std::vector<std::vector<SweepRow>> rows(graphs.size());
  ParallelFor(graphs.size(), [&](std::size_t i) {
    const ConflictGraph& g = graphs[i];
    const auto& entry = manifest.entries[i];
    const VertexId n = g.num_vertices();
    const Embeddings unit = UnitEmbeddings(n);
    Embeddings learned;
    if (model) learned = ComputeEmbeddings(*model, g);
    rows[i].reserve(per_graph);
    for (std::size_t k = 0; k < options.etas.size(); ++k) {
      const double eta = options.etas[k];
      Rng rng(DeriveSeed(options.seed, i * options.etas.size() + k));
      const auto u = ecdf.SampleMany(rng, static_cast<std::size_t>(n));
      const double u_eta = ecdf.Quantile(eta);
      const Schedule vanilla = LocalGreedySchedule(g, u);
      auto emit = [&](const char* method, const Embeddings& z) {
        const SparseSchedule s = ScheduleSparse(g, u, z, u_eta);
        rows[i].push_back({static_cast<std::int32_t>(i), n, entry.d_bar, eta, method,
                           ComputeRatios(g, u, vanilla, s)});
      };
      emit("stat", unit);
      if (model) emit("gcn", learned);
    }
  });
  std::vector<SweepRow> out;
  out.reserve(graphs.size() * per_graph);
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

namespace {

struct SlotInputs {
  std::vector<std::vector<double>> rates;
  std::vector<std::vector<std::int64_t>> arrivals;
};

// Runs one scheduler in closed loop. `z` is null for the vanilla scheduler.
TimeSimRow SimulateScheduler(const ConflictGraph& g, const SlotInputs& inputs,
                             const Embeddings* z, double u_eta) {
  TimeSimRow row;
  auto state = QueueState::Empty(g.num_vertices());
  double degree_sum = 0.0;
  for (std::size_t t = 0; t < inputs.rates.size(); ++t) {
    const auto u = Utilities(state, inputs.rates[t]);
    VertexSet selected;
    if (z == nullptr) {
      Schedule s = LocalGreedySchedule(g, u);
      row.messages += s.p2p_messages;
      selected = std::move(s.selected);
    } else {
      SparseSchedule s = ScheduleSparse(g, u, *z, u_eta);
      row.messages += s.schedule.p2p_messages;
      degree_sum += AverageDegree(s.sparse.sparse.graph);
      selected = std::move(s.schedule.selected);
    }
    StepResult step = Step(g, state, selected, inputs.rates[t], inputs.arrivals[t]);
    for (std::size_t v = 0; v < step.delivered.size(); ++v) {
      row.delivered += step.delivered[v];
      row.arrivals += step.arrivals[v];
    }
    state = std::move(step.next);
    double queue_sum = 0.0;
    for (auto q : state.q) queue_sum += static_cast<double>(q);
    row.mean_queue.push_back(g.num_vertices() > 0 ? queue_sum / g.num_vertices() : 0.0);
  }
  for (auto q : state.q) row.residual += q;
  const double slots = static_cast<double>(std::max<std::size_t>(1, inputs.rates.size()));
  row.rr_avg_degree =
      z == nullptr ? 1.0 : RetentionRatio(degree_sum / slots, AverageDegree(g));
  return row;
}

}  // namespace

std::vector<TimeSimRow> TimeSimulation(const GcnModel* model,
                                       const DatasetManifest& manifest,
                                       std::span<const ConflictGraph> graphs,
                                       const EmpiricalDistribution& ecdf,
                                       const TimeSimOptions& options) {
  CheckManifest(manifest, graphs);
  if (options.slots < 1) throw ParameterError("time simulation needs >= 1 slot");
  if (!(options.mu_min > 0.0 && options.mu_min <= options.mu_max && options.mu_max < 1.0)) {
    throw ParameterError("traffic load range must satisfy 0 < mu_min <= mu_max < 1");
  }
  const double u_eta = ecdf.Quantile(options.eta);
  std::vector<std::vector<TimeSimRow>> rows(graphs.size());
  ParallelFor(graphs.size(), [&](std::size_t i) {
    const ConflictGraph& g = graphs[i];
    const VertexId n = g.num_vertices();
    Rng rng(DeriveSeed(options.seed, i));
    TrafficConfig traffic = options.traffic;
    traffic.mu = options.mu_min + (options.mu_max - options.mu_min) * UniformUnit(rng);
    traffic.Validate();
    const double lambda = traffic.ArrivalRate();

    SlotInputs inputs;
    for (int t = 0; t < options.slots; ++t) {
      inputs.rates.push_back(SampleRates(rng, n, traffic));
      std::vector<std::int64_t> a(n);
      for (auto& x : a) x = SampleArrivals(rng, lambda);
      inputs.arrivals.push_back(std::move(a));
    }

    const Embeddings unit = UnitEmbeddings(n);
    Embeddings learned;
    if (model) learned = ComputeEmbeddings(*model, g);

    TimeSimRow vanilla = SimulateScheduler(g, inputs, nullptr, u_eta);
    vanilla.method = "vanilla";
    vanilla.rr_messages = 1.0;
    const double base_messages = static_cast<double>(vanilla.messages);
    if (base_messages == 0.0) vanilla.rr_messages = 0.0;
    rows[i].push_back(std::move(vanilla));

    auto run_sparse = [&](const char* method, const Embeddings& z) {
      TimeSimRow row = SimulateScheduler(g, inputs, &z, u_eta);
      row.method = method;
      row.rr_messages = RetentionRatio(static_cast<double>(row.messages), base_messages);
      rows[i].push_back(std::move(row));
    };
    run_sparse("stat", unit);
    if (model) run_sparse("gcn", learned);

    for (auto& r : rows[i]) {
      r.graph_id = static_cast<std::int32_t>(i);
      r.n = n;
      r.d_bar = manifest.entries[i].d_bar;
    }
  });
  std::vector<TimeSimRow> out;
  for (auto& r : rows) {
    for (auto& row : r) out.push_back(std::move(row));
  }
  return out;
}

std::string SweepCsv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "graph_id,V,d_bar,eta,method,ar_utility,rr_vertices,rr_avg_degree,rr_messages\n";
  for (const auto& r : rows) {
    out << r.graph_id << ',' << r.n << ',' << FormatDouble(r.d_bar) << ','
        << FormatDouble(r.eta) << ',' << r.method << ','
        << FormatDouble(r.ratios.ar_utility) << ',' << FormatDouble(r.ratios.rr_vertices)
        << ',' << FormatDouble(r.ratios.rr_avg_degree) << ','
        << FormatDouble(r.ratios.rr_messages) << '\n';
  }
  return out.str();
}

std::string TimeSimCsv(std::span<const TimeSimRow> rows) {
  std::ostringstream out;
  out << "graph_id,V,d_bar,method,rr_avg_degree,rr_messages,delivered,arrivals\n";
  for (const auto& r : rows) {
    out << r.graph_id << ',' << r.n << ',' << FormatDouble(r.d_bar) << ',' << r.method
        << ',' << FormatDouble(r.rr_avg_degree) << ',' << FormatDouble(r.rr_messages)
        << ',' << r.delivered << ',' << r.arrivals << '\n';
  }
  return out.str();
}

}  // namespace linksparse
