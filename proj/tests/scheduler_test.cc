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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "linksparse/errors.h"
#include "linksparse/graph.h"
#include "linksparse/random.h"
#include "linksparse/scheduler.h"
#include "test_util.h"

namespace linksparse {
namespace {

using testing::MakeGraph;
using testing::Path;
using testing::Star;
using testing::Triangle;

struct ReferenceRun {
  std::vector<VertexId> selected;
  std::int32_t rounds = 0;
  std::vector<std::int64_t> weight_messages;
  std::vector<std::int64_t> notify_messages;
};

bool Beats(const std::vector<double>& w, VertexId a, VertexId b) {
  return w[a] > w[b] || (w[a] == w[b] && a < b);
}

// Literal synchronous rounds: strict local maxima among undecided contenders
// join, their undecided neighbors drop out, deciders notify every neighbor
// that was still undecided when the round began.
ReferenceRun SimulateRounds(const ConflictGraph& g, const std::vector<double>& w) {
  const VertexId n = g.num_vertices();
  std::vector<bool> undecided(n), in(n, false);
  for (VertexId v = 0; v < n; ++v) undecided[v] = w[v] > 0.0;
  ReferenceRun run;
  while (true) {
    bool any = false;
    for (VertexId v = 0; v < n; ++v) any = any || undecided[v];
    if (!any) break;
    ++run.rounds;
    std::int64_t weight = 0;
    for (auto [a, b] : g.EdgeList()) weight += undecided[a] && undecided[b] ? 2 : 0;

    std::vector<bool> decides(n, false);
    std::vector<VertexId> winners;
    for (VertexId v = 0; v < n; ++v) {
      if (!undecided[v]) continue;
      bool best = true;
      for (VertexId u : g.neighbors(v)) best = best && !(undecided[u] && Beats(w, u, v));
      if (best) winners.push_back(v);
    }
    for (VertexId v : winners) {
      in[v] = true;
      decides[v] = true;
      for (VertexId u : g.neighbors(v)) decides[u] = decides[u] || undecided[u];
    }
    std::int64_t notify = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (!decides[v]) continue;
      for (VertexId u : g.neighbors(v)) notify += undecided[u] ? 1 : 0;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (decides[v]) undecided[v] = false;
    }
    run.weight_messages.push_back(weight);
    run.notify_messages.push_back(notify);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (in[v]) run.selected.push_back(v);
  }
  return run;
}

// Sequential greedy: repeatedly take the best remaining positive vertex.
std::vector<VertexId> SequentialGreedy(const ConflictGraph& g, const std::vector<double>& w) {
  const VertexId n = g.num_vertices();
  std::vector<bool> alive(n);
  for (VertexId v = 0; v < n; ++v) alive[v] = w[v] > 0.0;
  std::vector<bool> in(n, false);
  while (true) {
    VertexId best = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (alive[v] && (best < 0 || Beats(w, v, best))) best = v;
    }
    if (best < 0) break;
    in[best] = true;
    alive[best] = false;
    for (VertexId u : g.neighbors(best)) alive[u] = false;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

TEST(LocalGreedyTest, Examples) {
  std::vector<double> w{3, 2, 1};
  auto s = LocalGreedySchedule(Triangle(), w);
  EXPECT_EQ(s.selected.members(), (std::vector<VertexId>{0}));
  EXPECT_EQ(TotalWeight(w, s.selected), 3.0);

  w = {1, 5, 1};
  s = LocalGreedySchedule(Path(3), w);
  EXPECT_EQ(s.selected.members(), (std::vector<VertexId>{1}));

  w = {1, 2, 3, 4};
  s = LocalGreedySchedule(MakeGraph(4, {}), w);
  EXPECT_EQ(s.selected.size(), 4u);
  EXPECT_EQ(s.rounds, 1);
  EXPECT_EQ(s.p2p_messages, 0);
}

TEST(LocalGreedyTest, MessageCountingExamples) {
  std::vector<double> w{3, 1};
  auto t = LocalGreedyScheduleTraced(Path(2), w);
  ASSERT_EQ(t.trace.size(), 1u);
  EXPECT_EQ(t.trace[0].weight_messages, 2);
  EXPECT_EQ(t.trace[0].notify_messages, 2);
  EXPECT_EQ(t.schedule.p2p_messages, 4);
  EXPECT_EQ(CountMessages(t.trace), 4);

  w = {2.5};
  EXPECT_EQ(LocalGreedySchedule(MakeGraph(1, {}), w).p2p_messages, 0);
}

TEST(LocalGreedyTest, ChainNeedsSeveralRounds) {
  // Increasing weights along a path: 3 joins first, then 1.
  std::vector<double> w{1, 2, 3, 4};
  auto t = LocalGreedyScheduleTraced(Path(4), w);
  EXPECT_EQ(t.schedule.selected.members(), (std::vector<VertexId>{1, 3}));
  EXPECT_EQ(t.schedule.rounds, 2);
  EXPECT_EQ(t.trace[0].joined, (std::vector<VertexId>{3}));
  EXPECT_EQ(t.trace[0].excluded, (std::vector<VertexId>{2}));
  EXPECT_EQ(t.trace[1].joined, (std::vector<VertexId>{1}));
  EXPECT_EQ(t.trace[1].excluded, (std::vector<VertexId>{0}));
  // Round 1: 3 edges exchange weights; 2-3 notify both ways, 2 tells 1.
  // Round 2: edge 0-1 exchanges and both notify.
  EXPECT_EQ(t.trace[0].weight_messages, 6);
  EXPECT_EQ(t.trace[0].notify_messages, 3);
  EXPECT_EQ(t.trace[1].weight_messages, 2);
  EXPECT_EQ(t.trace[1].notify_messages, 2);
}

TEST(LocalGreedyTest, TiesGoToLowerId) {
  std::vector<double> w{1, 1, 1};
  EXPECT_EQ(LocalGreedySchedule(Triangle(), w).selected.members(), (std::vector<VertexId>{0}));
  EXPECT_EQ(LocalGreedySchedule(Path(3), w).selected.members(),
            (std::vector<VertexId>{0, 2}));
}

TEST(LocalGreedyTest, ZeroAndNegativeWeightsAreSilent) {
  // Vertex 1 sits between two contenders but never speaks or joins.
  std::vector<double> w{2, 0, 3, -1};
  const auto g = MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto s = LocalGreedySchedule(g, w);
  EXPECT_EQ(s.selected.members(), (std::vector<VertexId>{0, 2}));
  EXPECT_EQ(s.p2p_messages, 0);
  std::vector<double> zeros(4, 0.0);
  const auto empty = LocalGreedySchedule(g, zeros);
  EXPECT_TRUE(empty.selected.empty());
  EXPECT_EQ(empty.rounds, 0);
  EXPECT_EQ(empty.p2p_messages, 0);
}

TEST(LocalGreedyTest, RejectsBadWeights) {
  std::vector<double> w{1, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(LocalGreedySchedule(Path(2), w), ParameterError);
  w = {1, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(LocalGreedySchedule(Path(2), w), ParameterError);
  w = {1};
  EXPECT_THROW(LocalGreedySchedule(Path(2), w), ParameterError);
}

TEST(LocalGreedyTest, MatchesRoundSimulationAndSequentialGreedy) {
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = testing::RandomSmallGraph(rng, 40);
    auto w = testing::RandomWeights(rng, g.num_vertices(), -1.0, 5.0);
    // Coarse weights force ties.
    if (trial % 3 == 0) {
      for (auto& x : w) x = std::round(x);
    }
    const auto t = LocalGreedyScheduleTraced(g, w);
    const auto ref = SimulateRounds(g, w);
    ASSERT_EQ(t.schedule.selected.members(), ref.selected);
    ASSERT_EQ(t.schedule.rounds, ref.rounds);
    ASSERT_EQ(t.trace.size(), static_cast<std::size_t>(ref.rounds));
    for (int r = 0; r < ref.rounds; ++r) {
      EXPECT_EQ(t.trace[r].weight_messages, ref.weight_messages[r]) << "round " << r + 1;
      EXPECT_EQ(t.trace[r].notify_messages, ref.notify_messages[r]) << "round " << r + 1;
    }
    EXPECT_EQ(t.schedule.selected.members(), SequentialGreedy(g, w));
    EXPECT_FALSE(ValidateSchedule(g, w, t.schedule.selected).has_value());
  }
}

TEST(LocalGreedyTest, BoundedByOptimumAndExactOnStars) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::RandomSmallGraph(rng, 12);
    const auto w = testing::RandomWeights(rng, g.num_vertices());
    const double greedy = TotalWeight(w, LocalGreedySchedule(g, w).selected);
    const double best = BruteForceMwis(g, w).weight;
    EXPECT_LE(greedy, best + 1e-9);
    EXPECT_GE(greedy, *std::max_element(w.begin(), w.end()));
  }
  // Greedy is exact on cliques and edgeless graphs, and on a star unless the
  // center outweighs every leaf but not their sum.
  for (VertexId k = 1; k <= 8; ++k) {
    for (const auto& g : {testing::Complete(k), MakeGraph(k, {})}) {
      const auto w = testing::RandomWeights(rng, k);
      EXPECT_DOUBLE_EQ(TotalWeight(w, LocalGreedySchedule(g, w).selected),
                       BruteForceMwis(g, w).weight);
    }
    const auto star = Star(k);
    auto w = testing::RandomWeights(rng, k + 1);
    const double leaves = std::accumulate(w.begin() + 1, w.end(), 0.0);
    const double top = *std::max_element(w.begin() + 1, w.end());
    const double greedy = TotalWeight(w, LocalGreedySchedule(star, w).selected);
    const double best = BruteForceMwis(star, w).weight;
    if (w[0] < top || w[0] >= leaves) {
      EXPECT_DOUBLE_EQ(greedy, best);
    } else {
      EXPECT_EQ(greedy, w[0]);
    }
    w[0] = leaves + 1.0;
    EXPECT_DOUBLE_EQ(TotalWeight(w, LocalGreedySchedule(star, w).selected), leaves + 1.0);
    w[0] = 0.5 * top;
    EXPECT_DOUBLE_EQ(TotalWeight(w, LocalGreedySchedule(star, w).selected), leaves);
  }
}

TEST(LocalGreedyTest, Deterministic) {
  const auto g = GenerateErdosRenyi(200, 0.05, 3);
  Rng rng(4);
  const auto w = testing::RandomWeights(rng, 200);
  const auto a = LocalGreedySchedule(g, w);
  const auto b = LocalGreedySchedule(g, w);
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(a.rounds, b.rounds);
  EXPECT_EQ(a.p2p_messages, b.p2p_messages);
}

TEST(LocalGreedyTest, MessagesGrowWithDensity) {
  Rng rng(33);
  double previous = -1.0;
  for (double p : {0.02, 0.05, 0.1, 0.2, 0.4}) {
    double total = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto g = GenerateErdosRenyi(80, p, rng());
      const auto w = testing::RandomWeights(rng, 80);
      total += static_cast<double>(LocalGreedySchedule(g, w).p2p_messages);
    }
    EXPECT_GE(total / 50.0, previous) << "p = " << p;
    previous = total / 50.0;
  }
}

TEST(LocalGreedyTest, TraceJsonLines) {
  std::vector<double> w{3, 1};
  const auto t = LocalGreedyScheduleTraced(Path(2), w);
  std::ostringstream out;
  WriteTraceJsonLines(out, t.trace);
  EXPECT_EQ(out.str(),
            "{\"round\":1,\"joined\":[0],\"excluded\":[1],\"weight_messages\":2,"
            "\"notify_messages\":2}\n");
}

TEST(ValidateScheduleTest, ReportsViolations) {
  std::vector<double> w{1, 1};
  auto v = ValidateSchedule(Path(2), w, VertexSet::All(2));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ScheduleViolation::Kind::kEdgeInside);
  EXPECT_EQ(v->a, 0);
  EXPECT_EQ(v->b, 1);

  v = ValidateSchedule(Path(2), w, VertexSet(2));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ScheduleViolation::Kind::kNotMaximal);
  EXPECT_FALSE(v->ToString().empty());

  EXPECT_FALSE(ValidateSchedule(Path(2), w, LocalGreedySchedule(Path(2), w).selected));

  std::vector<double> zero{0, 0};
  EXPECT_FALSE(ValidateSchedule(Path(2), zero, VertexSet(2)));
  EXPECT_EQ(ValidateSchedule(Path(2), w, VertexSet(3))->kind,
            ScheduleViolation::Kind::kSizeMismatch);
}

}  // namespace
}  // namespace linksparse
