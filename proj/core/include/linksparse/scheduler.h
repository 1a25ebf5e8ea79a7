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

#ifndef LINKSPARSE_SCHEDULER_H_
#define LINKSPARSE_SCHEDULER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "linksparse/graph.h"

namespace linksparse {

// Local greedy solver (LGS) for maximum weighted independent set, run as a
// synchronous distributed protocol.
//
// Only vertices with weight > 0 contend. In every round each undecided
// contender whose (weight, -id) key beats all of its undecided contending
// neighbors joins the schedule, and its undecided neighbors drop out. The
// result is the same set the sequential greedy (repeatedly take the best
// remaining vertex, delete its neighborhood) produces.
//
// Message model, per round r:
//   * weight exchange: every undecided contender sends its weight to each
//     undecided contending neighbor, i.e. 2 messages per edge whose endpoints
//     are both undecided at the start of r;
//   * notification: every vertex that joins or drops out in r notifies each
//     neighbor that was an undecided contender at the start of r.
// Non-contending vertices neither send nor receive.

struct RoundTrace {
  std::int32_t round = 0;  // 1-based
  std::vector<VertexId> joined;
  std::vector<VertexId> excluded;
  std::int64_t weight_messages = 0;
  std::int64_t notify_messages = 0;
};

struct Schedule {
  VertexSet selected;
  std::int32_t rounds = 0;
  std::int64_t p2p_messages = 0;
};

struct TracedSchedule {
  Schedule schedule;
  std::vector<RoundTrace> trace;
};

/// Throws ParameterError on a non-finite weight or a length mismatch.
Schedule LocalGreedySchedule(const ConflictGraph& g, std::span<const double> w);
TracedSchedule LocalGreedyScheduleTraced(const ConflictGraph& g,
                                         std::span<const double> w);

std::int64_t CountMessages(std::span<const RoundTrace> trace);

/// One JSON object per line:
/// {"round":1,"joined":[...],"excluded":[...],"weight_messages":..,"notify_messages":..}
void WriteTraceJsonLines(std::ostream& out, std::span<const RoundTrace> trace);

double TotalWeight(std::span<const double> w, const VertexSet& set);

struct ScheduleViolation {
  enum class Kind { kEdgeInside, kNotMaximal, kSizeMismatch };
  Kind kind;
  VertexId a = -1;  // vertex (kNotMaximal) or edge endpoint
  VertexId b = -1;
  std::string ToString() const;
};

/// Checks that the selected set is independent and that every positive
/// weight vertex outside it has a selected neighbor.
std::optional<ScheduleViolation> ValidateSchedule(const ConflictGraph& g,
                                                  std::span<const double> w,
                                                  const VertexSet& selected);

}  // namespace linksparse

#endif  // LINKSPARSE_SCHEDULER_H_
