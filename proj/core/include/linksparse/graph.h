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

#ifndef LINKSPARSE_GRAPH_H_
#define LINKSPARSE_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

namespace linksparse {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Undirected conflict graph. Vertices are wireless links, dense ids
/// 0..n-1; an edge means the two links cannot transmit in the same slot.
///
/// Adjacency lists are sorted and duplicate-free, and the graph never holds
/// self-loops. Instances are immutable once constructed.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  /// Builds a graph from an edge list. Each edge may be given in either
  /// orientation; duplicates are merged. Throws ParameterError on a
  /// self-loop or an endpoint outside [0, n).
  ConflictGraph(VertexId n, std::span<const Edge> edges);

  VertexId num_vertices() const { return static_cast<VertexId>(adj_.size()); }
  std::int64_t num_edges() const { return num_edges_; }

  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  std::int32_t degree(VertexId v) const {
    return static_cast<std::int32_t>(adj_[v].size());
  }
  bool HasEdge(VertexId a, VertexId b) const;

  /// Edges as (i, j) with i < j, sorted lexicographically.
  std::vector<Edge> EdgeList() const;

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::int64_t num_edges_ = 0;
};

/// A subset of the vertex ids of some graph with n vertices. Members are
/// kept sorted; `indicator()` is the matching 0/1 vector.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(VertexId universe) : indicator_(universe, 0) {}
  VertexSet(VertexId universe, std::span<const VertexId> members);

  static VertexSet All(VertexId universe);

  VertexId universe() const { return static_cast<VertexId>(indicator_.size()); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const { return indicator_[v] != 0; }

  /// Adds v. Insertion must be in increasing id order or use Insert().
  void Insert(VertexId v);

  const std::vector<VertexId>& members() const { return members_; }
  const std::vector<std::uint8_t>& indicator() const { return indicator_; }
  std::vector<double> IndicatorVector() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> members_;
  std::vector<std::uint8_t> indicator_;
};

/// Subgraph induced on a kept vertex set, plus the map from subgraph ids back
/// to parent ids (`to_parent[i]` is the parent id of subgraph vertex i).
struct InducedGraph {
  ConflictGraph graph;
  std::vector<VertexId> to_parent;
};

/// Erdos-Renyi G(n, p). One Bernoulli draw per unordered pair in (i < j)
/// row-major order from a generator seeded with `seed`.
ConflictGraph GenerateErdosRenyi(VertexId n, double p, std::uint64_t seed);

/// L = I - D^{-1/2} A D^{-1/2}. Rows and columns of isolated vertices are
/// zero, including the diagonal entry.
Eigen::SparseMatrix<double> NormalizedLaplacian(const ConflictGraph& g);

InducedGraph InducedSubgraph(const ConflictGraph& g, const VertexSet& keep);

/// 2m / n.
double AverageDegree(const ConflictGraph& g);

/// True when no edge of g joins two members of `set`.
bool IsIndependent(const ConflictGraph& g, const VertexSet& set);

struct MwisSolution {
  VertexSet set;
  double weight = 0.0;
};

inline constexpr VertexId kMaxBruteForceVertices = 30;

/// Exact maximum-weight independent set by exhaustive branch and bound.
/// Among optimal sets the lexicographically smallest sorted member list is
/// returned (this includes zero-weight vertices whenever they can be added
/// without changing the weight). Throws ParameterError when n exceeds
/// kMaxBruteForceVertices or a weight is negative.
MwisSolution BruteForceMwis(const ConflictGraph& g, std::span<const double> w);

}  // namespace linksparse

#endif  // LINKSPARSE_GRAPH_H_
