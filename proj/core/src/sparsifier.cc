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

#include "linksparse/sparsifier.h"

#include <string>

#include "linksparse/errors.h"

namespace linksparse {

Embeddings UnitEmbeddings(VertexId n) { return Embeddings::Ones(n, 2); }

SparseResult Sparsify(const ConflictGraph& g, std::span<const double> u,
                      const Embeddings& z, double u_eta) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(u.size()) != n || z.rows() != n) {
    throw ParameterError("sparsify: utility/embedding sizes do not match n = " +
                         std::to_string(n));
  }
  SparseResult out{VertexSet(n), VertexSet(n), {}, {}};
  for (VertexId v = 0; v < n; ++v) {
    const double h = LinkWeight(u[v], z(v, 0), z(v, 1), u_eta);
    if (h > 0.0) {
      out.keep.Insert(v);
      out.weights.push_back(h);
    } else {
      out.removed.Insert(v);
    }
  }
  out.sparse = InducedSubgraph(g, out.keep);
  return out;
}

SparseResult StatisticalBaseline(const ConflictGraph& g, std::span<const double> u,
                                 double u_eta) {
  return Sparsify(g, u, UnitEmbeddings(g.num_vertices()), u_eta);
}

SparseSchedule ScheduleSparse(const ConflictGraph& g, std::span<const double> u,
                              const Embeddings& z, double u_eta) {
  SparseSchedule out;
  out.sparse = Sparsify(g, u, z, u_eta);
  const Schedule local = LocalGreedySchedule(out.sparse.sparse.graph, out.sparse.weights);
  out.schedule.rounds = local.rounds;
  out.schedule.p2p_messages = local.p2p_messages;
  out.schedule.selected = VertexSet(g.num_vertices());
  for (VertexId v : local.selected.members()) {
    out.schedule.selected.Insert(out.sparse.sparse.to_parent[v]);
  }
  return out;
}

}  // namespace linksparse
