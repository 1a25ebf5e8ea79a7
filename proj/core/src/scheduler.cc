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

#include "linksparse/scheduler.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linksparse/errors.h"

namespace linksparse {
namespace {

void CheckWeights(const ConflictGraph& g, std::span<const double> w) {
  if (static_cast<VertexId>(w.size()) != g.num_vertices()) {
    throw ParameterError("weight vector length " + std::to_string(w.size()) +
                         " does not match n = " +
                         std::to_string(g.num_vertices()));
  }
  for (std::size_t v = 0; v < w.size(); ++v) {
    if (!std::isfinite(w[v])) {
      throw ParameterError("non-finite weight at vertex " + std::to_string(v));
    }
  }
}

}  // namespace

// The synchronous rounds are not simulated one by one. A contender v decides
// as soon as every higher-priority contending neighbor has decided:
//   * if one of them joined, v is excluded in the earliest such join round;
//   * otherwise v joins one round after the last of them was excluded.
// Visiting contenders in priority order therefore yields every decision
// round in O(n log n + m), and the per-round message counts follow from the
// decision rounds of each edge's endpoints.
TracedSchedule LocalGreedyScheduleTraced(const ConflictGraph& g,
                                         std::span<const double> w) {
  CheckWeights(g, w);
  const VertexId n = g.num_vertices();

  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v) {
    if (w[v] > 0.0) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return w[a] != w[b] ? w[a] > w[b] : a < b;
  });

  std::vector<std::int32_t> rank(n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<std::int32_t>(i);
  }

  // decision round (1-based) and outcome for each contender
  std::vector<std::int32_t> round(n, 0);
  std::vector<std::uint8_t> joined(n, 0);
  std::int32_t last_round = 0;
  for (VertexId v : order) {
    std::int32_t first_join = 0;
    std::int32_t last_exclusion = 0;
    for (VertexId u : g.neighbors(v)) {
      if (rank[u] < 0 || rank[u] > rank[v]) continue;
      if (joined[u]) {
        if (first_join == 0 || round[u] < first_join) first_join = round[u];
      } else {
        last_exclusion = std::max(last_exclusion, round[u]);
      }
    }
    if (first_join > 0) {
      round[v] = first_join;
    } else {
      round[v] = last_exclusion + 1;
      joined[v] = 1;
    }
    last_round = std::max(last_round, round[v]);
  }

  TracedSchedule out;
  out.trace.resize(last_round);
  for (std::int32_t r = 0; r < last_round; ++r) out.trace[r].round = r + 1;

  // weight_upto[r]: messages from edges whose endpoints both stay undecided
  // through round r; a suffix sum spreads them over rounds 1..r.
  std::vector<std::int64_t> weight_upto(last_round + 2, 0);
  for (VertexId a : order) {
    for (VertexId b : g.neighbors(a)) {
      if (b <= a || rank[b] < 0) continue;
      const std::int32_t ra = round[a];
      const std::int32_t rb = round[b];
      weight_upto[std::min(ra, rb)] += 2;
      if (rb >= ra) ++out.trace[ra - 1].notify_messages;
      if (ra >= rb) ++out.trace[rb - 1].notify_messages;
    }
  }
  std::int64_t running = 0;
  for (std::int32_t r = last_round; r >= 1; --r) {
    running += weight_upto[r];
    out.trace[r - 1].weight_messages = running;
  }

  VertexSet selected(n);
  for (VertexId v = 0; v < n; ++v) {
    if (rank[v] < 0) continue;
    auto& step = out.trace[round[v] - 1];
    if (joined[v]) {
      selected.Insert(v);
      step.joined.push_back(v);
    } else {
      step.excluded.push_back(v);
    }
  }

  out.schedule.selected = std::move(selected);
  out.schedule.rounds = last_round;
  out.schedule.p2p_messages = CountMessages(out.trace);
  return out;
}

Schedule LocalGreedySchedule(const ConflictGraph& g, std::span<const double> w) {
  return LocalGreedyScheduleTraced(g, w).schedule;
}

std::int64_t CountMessages(std::span<const RoundTrace> trace) {
  std::int64_t total = 0;
  for (const auto& r : trace) total += r.weight_messages + r.notify_messages;
  return total;
}

namespace {

void WriteIdArray(std::ostream& out, const std::vector<VertexId>& ids) {
  out << '[';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out << ',';
    out << ids[i];
  }
  out << ']';
}

}  // namespace

void WriteTraceJsonLines(std::ostream& out, std::span<const RoundTrace> trace) {
  for (const auto& r : trace) {
    out << "{\"round\":" << r.round << ",\"joined\":";
    WriteIdArray(out, r.joined);
    out << ",\"excluded\":";
    WriteIdArray(out, r.excluded);
    out << ",\"weight_messages\":" << r.weight_messages
        << ",\"notify_messages\":" << r.notify_messages << "}\n";
  }
}

double TotalWeight(std::span<const double> w, const VertexSet& set) {
  double total = 0.0;
  for (VertexId v : set.members()) total += w[v];
  return total;
}

std::string ScheduleViolation::ToString() const {
  switch (kind) {
    case Kind::kEdgeInside:
      return "edge (" + std::to_string(a) + ", " + std::to_string(b) +
             ") inside the schedule";
    case Kind::kNotMaximal:
      return "vertex " + std::to_string(a) +
             " has positive weight and no scheduled neighbor";
    case Kind::kSizeMismatch:
      return "schedule universe does not match the graph";
  }
  return "unknown violation";
}

std::optional<ScheduleViolation> ValidateSchedule(const ConflictGraph& g,
                                                  std::span<const double> w,
                                                  const VertexSet& selected) {
  using Kind = ScheduleViolation::Kind;
  if (selected.universe() != g.num_vertices() ||
      static_cast<VertexId>(w.size()) != g.num_vertices()) {
    return ScheduleViolation{Kind::kSizeMismatch};
  }
  for (VertexId v : selected.members()) {
    for (VertexId u : g.neighbors(v)) {
      if (u > v && selected.contains(u)) {
        return ScheduleViolation{Kind::kEdgeInside, v, u};
      }
    }
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (selected.contains(v) || !(w[v] > 0.0)) continue;
    const auto nbrs = g.neighbors(v);
    const bool covered = std::any_of(nbrs.begin(), nbrs.end(), [&](VertexId u) {
      return selected.contains(u);
    });
    if (!covered) return ScheduleViolation{Kind::kNotMaximal, v};
  }
  return std::nullopt;
}

}  // namespace linksparse
