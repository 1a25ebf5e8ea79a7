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

#ifndef LINKSPARSE_EXPERIMENTS_H_
#define LINKSPARSE_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linksparse/dataset.h"
#include "linksparse/gcn.h"
#include "linksparse/graph.h"
#include "linksparse/scheduler.h"
#include "linksparse/sparsifier.h"
#include "linksparse/traffic.h"

namespace linksparse {

/// Ratios of a sparse run over the vanilla run on the same (G, u).
struct Ratios {
  double ar_utility = 0.0;
  double rr_vertices = 0.0;
  double rr_avg_degree = 0.0;
  double rr_messages = 0.0;
};

/// ar_utility uses the original utilities; 0/0 is 1 for the AR and 0 for
/// every RR. Throws ContractError when the runs belong to different graphs.
Ratios ComputeRatios(const ConflictGraph& g, std::span<const double> u,
                     const Schedule& vanilla, const SparseSchedule& sparse);

struct SweepRow {
  std::int32_t graph_id = 0;
  VertexId n = 0;
  double d_bar = 0.0;
  double eta = 0.0;
  std::string method;  // "stat" or "gcn"
  Ratios ratios;
};

/// {0, 0.1, ..., 0.8, 0.85, 0.9, 0.95}.
std::vector<double> DefaultSweepQuantiles();

struct SweepOptions {
  std::vector<double> etas = DefaultSweepQuantiles();
  std::uint64_t seed = 1;
};

/// For every (graph, eta) one utility realization is drawn from the eCDF and
/// vanilla LGS, the threshold policy and (when a model is given) the GCN
/// sparsifier all run on it. Rows are ordered by graph, then eta, then method.
std::vector<SweepRow> QuantileSweep(const GcnModel* model,
                                    const DatasetManifest& manifest,
                                    std::span<const ConflictGraph> graphs,
                                    const EmpiricalDistribution& ecdf,
                                    const SweepOptions& options);

struct TimeSimOptions {
  TrafficConfig traffic;
  double mu_min = 0.03;  // per-instance load drawn uniformly in [mu_min, mu_max]
  double mu_max = 0.05;
  int slots = 300;
  double eta = 0.95;
  std::uint64_t seed = 1;
};

struct TimeSimRow {
  std::int32_t graph_id = 0;
  VertexId n = 0;
  double d_bar = 0.0;
  std::string method;  // "vanilla", "stat" or "gcn"
  double rr_avg_degree = 0.0;
  double rr_messages = 0.0;
  std::int64_t delivered = 0;
  std::int64_t arrivals = 0;
  // Not part of the CSV.
  std::int64_t residual = 0;
  std::int64_t messages = 0;
  std::vector<double> mean_queue;  // per slot, after service and arrivals
};

/// Closed-loop queue simulation per instance and scheduler. Every scheduler
/// sees the same arrival and rate realizations but its own queues. Ratios
/// are against the vanilla run of the same instance: rr_avg_degree is the
/// slot-averaged average degree of the contention graph over avg_degree(G),
/// rr_messages is total sparse messages over total vanilla messages.
std::vector<TimeSimRow> TimeSimulation(const GcnModel* model,
                                       const DatasetManifest& manifest,
                                       std::span<const ConflictGraph> graphs,
                                       const EmpiricalDistribution& ecdf,
                                       const TimeSimOptions& options);

std::string SweepCsv(std::span<const SweepRow> rows);
std::string TimeSimCsv(std::span<const TimeSimRow> rows);

}  // namespace linksparse

#endif  // LINKSPARSE_EXPERIMENTS_H_
