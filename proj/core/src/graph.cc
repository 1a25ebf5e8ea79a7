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

#include "linksparse/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "linksparse/errors.h"
#include "linksparse/random.h"

namespace linksparse {

ConflictGraph::ConflictGraph(VertexId n, std::span<const Edge> edges) {
  if (n < 0) throw ParameterError("vertex count must be non-negative");
  adj_.resize(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ParameterError("edge (" + std::to_string(a) + ", " +
                           std::to_string(b) + ") out of range for n = " +
                           std::to_string(n));
    }
    if (a == b) {
      throw ParameterError("self-loop on vertex " + std::to_string(a));
    }
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  std::int64_t total = 0;
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    total += static_cast<std::int64_t>(list.size());
  }
  num_edges_ = total / 2;
}

bool ConflictGraph::HasEdge(VertexId a, VertexId b) const {
  const auto& list = adj_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> ConflictGraph::EdgeList() const {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(num_edges_));
  for (VertexId i = 0; i < num_vertices(); ++i) {
    for (VertexId j : adj_[i]) {
      if (i < j) edges.emplace_back(i, j);
    }
  }
  return edges;
}

VertexSet::VertexSet(VertexId universe, std::span<const VertexId> members)
    : indicator_(universe, 0) {
  for (VertexId v : members) Insert(v);
}

VertexSet VertexSet::All(VertexId universe) {
  VertexSet s(universe);
  for (VertexId v = 0; v < universe; ++v) s.Insert(v);
  return s;
}

void VertexSet::Insert(VertexId v) {
  if (v < 0 || v >= universe()) {
    throw ParameterError("vertex " + std::to_string(v) + " outside universe");
  }
  if (indicator_[v]) return;
  indicator_[v] = 1;
  if (members_.empty() || members_.back() < v) {
    members_.push_back(v);
  } else {
    members_.insert(std::lower_bound(members_.begin(), members_.end(), v), v);
  }
}

std::vector<double> VertexSet::IndicatorVector() const {
  return std::vector<double>(indicator_.begin(), indicator_.end());
}

ConflictGraph GenerateErdosRenyi(VertexId n, double p, std::uint64_t seed) {
  if (n < 1) throw ParameterError("ER graph needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2.0 * 1.1) + 8);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      if (Bernoulli(rng, p)) edges.emplace_back(i, j);
    }
  }
  return ConflictGraph(n, edges);
}

Eigen::SparseMatrix<double> NormalizedLaplacian(const ConflictGraph& g) {
  const VertexId n = g.num_vertices();
  std::vector<double> inv_sqrt_deg(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) > 0) inv_sqrt_deg[v] = 1.0 / std::sqrt(g.degree(v));
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n + 2 * g.num_edges()));
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    triplets.emplace_back(v, v, 1.0);
    for (VertexId u : g.neighbors(v)) {
      triplets.emplace_back(v, u, -inv_sqrt_deg[v] * inv_sqrt_deg[u]);
    }
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  return lap;
}

InducedGraph InducedSubgraph(const ConflictGraph& g, const VertexSet& keep) {
  if (keep.universe() != g.num_vertices()) {
    throw ParameterError("kept set does not match the graph size");
  }
  InducedGraph out;
  out.to_parent = keep.members();
  std::vector<VertexId> to_child(g.num_vertices(), -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
    to_child[out.to_parent[i]] = static_cast<VertexId>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
    const VertexId v = out.to_parent[i];
    for (VertexId u : g.neighbors(v)) {
      if (u > v && to_child[u] >= 0) {
        edges.emplace_back(static_cast<VertexId>(i), to_child[u]);
      }
    }
  }
  out.graph = ConflictGraph(static_cast<VertexId>(out.to_parent.size()), edges);
  return out;
}

double AverageDegree(const ConflictGraph& g) {
  if (g.num_vertices() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.num_edges()) / g.num_vertices();
}

bool IsIndependent(const ConflictGraph& g, const VertexSet& set) {
  for (VertexId v : set.members()) {
    for (VertexId u : g.neighbors(v)) {
      if (set.contains(u)) return false;
    }
  }
  return true;
}

namespace {

// Depth-first include-before-exclude search over vertices in id order. The
// search only accepts maximal independent sets, which never stand in a
// prefix relation, so the visiting order is lexicographic and the first
// optimum found is the lexicographically smallest one.
class MwisSearch {
 public:
  MwisSearch(const ConflictGraph& g, std::span<const double> w)
      : g_(g), w_(w), n_(g.num_vertices()), nbr_(n_, 0) {
    for (VertexId v = 0; v < n_; ++v) {
      for (VertexId u : g.neighbors(v)) nbr_[v] |= (1u << u);
    }
  }

  MwisSolution Run() {
    Visit(0, 0u, 0u, 0.0);
    MwisSolution out{VertexSet(n_), best_weight_};
    for (VertexId v = 0; v < n_; ++v) {
      if (best_ & (1u << v)) out.set.Insert(v);
    }
    return out;
  }

 private:
  // `chosen`: selected vertices; `blocked`: vertices adjacent to chosen ones.
  void Visit(VertexId v, std::uint32_t chosen, std::uint32_t blocked,
             double weight) {
    if (v == n_) {
      if (!IsMaximal(chosen, blocked)) return;
      if (!found_ || weight > best_weight_) {
        found_ = true;
        best_weight_ = weight;
        best_ = chosen;
      }
      return;
    }
    if (found_ && weight + UpperBound(v, blocked) <= best_weight_) return;
    if (!(blocked & (1u << v))) {
      Visit(v + 1, chosen | (1u << v), blocked | nbr_[v], weight + w_[v]);
    }
    // Excluding v only leads to a maximal set if some neighbor is or can
    // still become selected.
    if ((blocked & (1u << v)) || HasLaterFreeNeighbor(v, blocked)) {
      Visit(v + 1, chosen, blocked, weight);
    }
  }

  double UpperBound(VertexId from, std::uint32_t blocked) const {
    double s = 0.0;
    for (VertexId u = from; u < n_; ++u) {
      if (!(blocked & (1u << u))) s += w_[u];
    }
    return s;
  }

  bool HasLaterFreeNeighbor(VertexId v, std::uint32_t blocked) const {
    for (VertexId u : g_.neighbors(v)) {
      if (u > v && !(blocked & (1u << u))) return true;
    }
    return false;
  }

  bool IsMaximal(std::uint32_t chosen, std::uint32_t blocked) const {
    const std::uint32_t all = n_ == 32 ? ~0u : ((1u << n_) - 1u);
    return ((chosen | blocked) & all) == all;
  }

  const ConflictGraph& g_;
  std::span<const double> w_;
  VertexId n_;
  std::vector<std::uint32_t> nbr_;
  bool found_ = false;
  double best_weight_ = 0.0;
  std::uint32_t best_ = 0;
};

}  // namespace

MwisSolution BruteForceMwis(const ConflictGraph& g, std::span<const double> w) {
  if (g.num_vertices() > kMaxBruteForceVertices) {
    throw ParameterError("brute-force MWIS refused for n = " +
                         std::to_string(g.num_vertices()) + " (limit " +
                         std::to_string(kMaxBruteForceVertices) + ")");
  }
  if (static_cast<VertexId>(w.size()) != g.num_vertices()) {
    throw ParameterError("weight vector length does not match the graph");
  }
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ParameterError("brute-force MWIS needs finite non-negative weights");
    }
  }
  return MwisSearch(g, w).Run();
}

}  // namespace linksparse
