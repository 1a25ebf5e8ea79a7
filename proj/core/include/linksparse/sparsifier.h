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

#ifndef LINKSPARSE_SPARSIFIER_H_
#define LINKSPARSE_SPARSIFIER_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "linksparse/graph.h"
#include "linksparse/scheduler.h"

namespace linksparse {

/// Per-link parameters Z = [z0, z1], one row per vertex. z0 scales the
/// link's own utility, z1 scales the global cut-off threshold.
using Embeddings = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Z = [1, 1]: plain threshold on the utility.
Embeddings UnitEmbeddings(VertexId n);

/// Contention-entry test of a single link: z0*u when z0*u - z1*u_eta > 0,
/// otherwise 0 (the step function is 0 at 0). A result <= 0 means the link
/// stays silent this slot.
inline double LinkWeight(double u, double z0, double z1, double u_eta) {
  const double own = z0 * u;
  return own - z1 * u_eta > 0.0 ? own : 0.0;
}

struct SparseResult {
  VertexSet keep;
  VertexSet removed;
  InducedGraph sparse;      // contention graph over `keep`
  std::vector<double> weights;  // LinkWeight per sparse vertex, all > 0
};

/// Removes every vertex with LinkWeight <= 0 and builds the contention graph
/// over the survivors. Throws ParameterError on length mismatches.
SparseResult Sparsify(const ConflictGraph& g, std::span<const double> u,
                      const Embeddings& z, double u_eta);

SparseResult StatisticalBaseline(const ConflictGraph& g, std::span<const double> u,
                                 double u_eta);

struct SparseSchedule {
  Schedule schedule;  // ids of the original graph; messages of sparse contention
  SparseResult sparse;
};

/// Runs LGS on the sparse graph with the reweighted utilities and maps the
/// selection back to original ids.
SparseSchedule ScheduleSparse(const ConflictGraph& g, std::span<const double> u,
                              const Embeddings& z, double u_eta);

}  // namespace linksparse

#endif  // LINKSPARSE_SPARSIFIER_H_
