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
#include <filesystem>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "linksparse/dataset.h"
#include "linksparse/errors.h"
#include "linksparse/experiments.h"
#include "linksparse/gcn.h"
#include "linksparse/graph_io.h"
#include "linksparse/random.h"
#include "linksparse/scheduler.h"
#include "linksparse/sparsifier.h"
#include "linksparse/traffic.h"
#include "test_util.h"

namespace linksparse {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const char* name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

TEST(RecipeTest, TrainingComposition) {
  const auto full = TrainingRecipe(1);
  ASSERT_EQ(full.entries.size(), 5900u);
  std::map<std::pair<VertexId, double>, int> by_degree;
  for (const auto& e : full.entries) ++by_degree[{e.n, e.d_bar}];
  int grid = 0;
  for (VertexId n : {100, 150, 200, 250, 300}) {
    for (double d : {2.0, 5.0, 7.5, 10.0, 12.5}) {
      EXPECT_GE((by_degree[{n, d}]), 200);
      ++grid;
    }
  }
  EXPECT_EQ(grid, 25);
  for (const auto& e : full.entries) {
    EXPECT_NEAR(e.p * e.n, e.d_bar, 1e-9);
    if (e.n == 100 && e.d_bar == 5.0) EXPECT_DOUBLE_EQ(e.p, 0.05);
  }
  // The (V, p) grid adds 9 x 50 graphs at V = 30 and at V = 100.
  const auto count_n = [&](VertexId n) {
    return std::count_if(full.entries.begin(), full.entries.end(),
                         [n](const auto& e) { return e.n == n; });
  };
  EXPECT_EQ(count_n(30), 450);
  EXPECT_EQ(count_n(100), 5 * 200 + 450);
  EXPECT_EQ(full.split, "train");

  const auto scaled = TrainingRecipe(1, 0.1);
  EXPECT_EQ(scaled.entries.size(), 590u);
}

TEST(RecipeTest, TestComposition) {
  const auto m = TestRecipe(7);
  ASSERT_EQ(m.entries.size(), 500u);
  std::set<std::uint64_t> seeds;
  for (const auto& e : m.entries) {
    seeds.insert(e.seed);
    if (e.n == 100 && e.d_bar == 20.0) EXPECT_DOUBLE_EQ(e.p, 0.2);
  }
  EXPECT_EQ(seeds.size(), 500u);
  EXPECT_THROW(TestRecipe(7, 0.0), ParameterError);
}

TEST(RecipeTest, Slice) {
  const auto m = SliceManifest(TestRecipe(3), 150, 4);
  EXPECT_EQ(m.entries.size(), 2u * 5u * 4u);
  for (const auto& e : m.entries) EXPECT_LE(e.n, 150);
}

TEST(DatasetTest, WriteAndLoadRoundTrip) {
  const auto dir = TempDir("linksparse_dataset_test");
  auto m = SliceManifest(TestRecipe(5), 100, 1);
  WriteDataset(dir, m);
  DatasetManifest back;
  const auto graphs = LoadDataset(dir / "manifest.json", &back);
  ASSERT_EQ(graphs.size(), m.entries.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    EXPECT_EQ(graphs[i], m.entries[i].Generate());
    EXPECT_EQ(back.entries[i].m, graphs[i].num_edges());
    EXPECT_TRUE(fs::exists(dir / back.entries[i].file));
  }
  EXPECT_EQ(ManifestToJson(back), ManifestToJson(m));
  fs::remove_all(dir);
}

TEST(DatasetTest, DetectsCorruptFiles) {
  const auto dir = TempDir("linksparse_dataset_bad");
  auto m = SliceManifest(TestRecipe(5), 100, 1);
  WriteDataset(dir, m);
  // Replace the first graph with one that has a different edge count.
  WriteGraphFile(dir / m.entries[0].file, ConflictGraph(m.entries[0].n, {}));
  EXPECT_THROW(LoadDataset(dir / "manifest.json"), DataError);
  fs::remove(dir / m.entries[0].file);
  EXPECT_THROW(LoadDataset(dir / "manifest.json"), DataError);
  EXPECT_THROW(LoadDataset(dir / "nothing.json"), DataError);
  WriteTextFile(dir / "broken.json", "{\"split\": 3");
  EXPECT_THROW(LoadDataset(dir / "broken.json"), DataError);
  fs::remove_all(dir);
}

TEST(DatasetTest, EntriesWithoutFilesAreGenerated) {
  const auto dir = TempDir("linksparse_dataset_gen");
  auto m = SliceManifest(TestRecipe(6), 100, 1);
  WriteTextFile(dir / "manifest.json", ManifestToJson(m));
  const auto graphs = LoadDataset(dir / "manifest.json");
  EXPECT_EQ(graphs, GenerateGraphs(m));
  fs::remove_all(dir);
}

TEST(RatiosTest, Conventions) {
  const auto g = testing::Path(3);
  std::vector<double> u{1, 2, 3};
  const auto vanilla = LocalGreedySchedule(g, u);

  const auto same = ScheduleSparse(g, u, UnitEmbeddings(3), 0.0);
  auto r = ComputeRatios(g, u, vanilla, same);
  EXPECT_EQ(r.ar_utility, 1.0);
  EXPECT_EQ(r.rr_vertices, 1.0);
  EXPECT_EQ(r.rr_avg_degree, 1.0);
  EXPECT_EQ(r.rr_messages, 1.0);

  const auto none = ScheduleSparse(g, u, UnitEmbeddings(3), 100.0);
  r = ComputeRatios(g, u, vanilla, none);
  EXPECT_EQ(r.ar_utility, 0.0);
  EXPECT_EQ(r.rr_vertices, 0.0);
  EXPECT_EQ(r.rr_avg_degree, 0.0);
  EXPECT_EQ(r.rr_messages, 0.0);

  // Edgeless graph: both RR denominators vanish.
  const auto e = testing::MakeGraph(3, {});
  r = ComputeRatios(e, u, LocalGreedySchedule(e, u), ScheduleSparse(e, u, UnitEmbeddings(3), 1.5));
  EXPECT_EQ(r.rr_avg_degree, 0.0);
  EXPECT_EQ(r.rr_messages, 0.0);
  EXPECT_DOUBLE_EQ(r.ar_utility, 5.0 / 6.0);

  std::vector<double> zero(3, 0.0);
  r = ComputeRatios(g, zero, LocalGreedySchedule(g, zero),
                    ScheduleSparse(g, zero, UnitEmbeddings(3), 0.0));
  EXPECT_EQ(r.ar_utility, 1.0);

  const auto other = testing::Path(4);
  std::vector<double> u4{1, 2, 3, 4};
  EXPECT_THROW(ComputeRatios(g, u, vanilla, ScheduleSparse(other, u4, UnitEmbeddings(4), 0.0)),
               ContractError);
}

struct SmallSetup {
  DatasetManifest manifest;
  std::vector<ConflictGraph> graphs;
  EmpiricalDistribution ecdf;
};

SmallSetup MakeSetup() {
  SmallSetup s;
  s.manifest = SliceManifest(TestRecipe(11), 150, 2);
  s.graphs = GenerateGraphs(s.manifest);
  Rng rng(12);
  std::vector<ConflictGraph> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(GenerateErdosRenyi(100, 0.05 + 0.02 * i, rng()));
  s.ecdf = CollectEcdf(pool, TrafficConfig{}, 200, rng);
  return s;
}

TEST(QuantileSweepTest, BaselineProperties) {
  const auto s = MakeSetup();
  SweepOptions options;
  options.seed = 3;
  ASSERT_EQ(options.etas.size(), 12u);
  const auto rows = QuantileSweep(nullptr, s.manifest, s.graphs, s.ecdf, options);
  ASSERT_EQ(rows.size(), s.graphs.size() * 12);
  std::map<double, std::pair<double, int>> kept;
  for (const auto& r : rows) {
    EXPECT_EQ(r.method, "stat");
    if (r.eta == 0.0) EXPECT_EQ(r.ratios.ar_utility, 1.0);
    for (double x : {r.ratios.ar_utility, r.ratios.rr_vertices, r.ratios.rr_avg_degree,
                     r.ratios.rr_messages}) {
      EXPECT_TRUE(std::isfinite(x));
      EXPECT_GE(x, 0.0);
    }
    EXPECT_LE(r.ratios.rr_vertices, 1.0);
    kept[r.eta].first += r.ratios.rr_vertices;
    kept[r.eta].second += 1;
  }
  double previous = 2.0;
  for (const auto& [eta, acc] : kept) {
    const double mean = acc.first / acc.second;
    EXPECT_LE(mean, previous + 1e-12) << "eta " << eta;
    previous = mean;
  }
  EXPECT_NEAR(kept[0.95].first / kept[0.95].second, 0.05, 0.02);
}

TEST(QuantileSweepTest, GcnRowsAndDeterminism) {
  const auto s = MakeSetup();
  Rng rng(4);
  const auto model = GcnModel::Initialize({}, rng);
  SweepOptions options;
  options.etas = {0.0, 0.5, 0.95};
  const auto a = QuantileSweep(&model, s.manifest, s.graphs, s.ecdf, options);
  ASSERT_EQ(a.size(), s.graphs.size() * 6);
  EXPECT_EQ(a[0].method, "stat");
  EXPECT_EQ(a[1].method, "gcn");
  EXPECT_EQ(a[0].eta, a[1].eta);
  const auto b = QuantileSweep(&model, s.manifest, s.graphs, s.ecdf, options);
  EXPECT_EQ(SweepCsv(a), SweepCsv(b));
  EXPECT_EQ(SweepCsv(a).substr(0, SweepCsv(a).find('\n')),
            "graph_id,V,d_bar,eta,method,ar_utility,rr_vertices,rr_avg_degree,rr_messages");
  options.seed = 2;
  EXPECT_NE(SweepCsv(QuantileSweep(&model, s.manifest, s.graphs, s.ecdf, options)), SweepCsv(a));
}

TEST(TimeSimulationTest, ConservationAndDeterminism) {
  auto s = MakeSetup();
  s.manifest = SliceManifest(s.manifest, 100, 1);
  s.graphs = GenerateGraphs(s.manifest);
  Rng rng(5);
  const auto model = GcnModel::Initialize({}, rng);
  TimeSimOptions options;
  options.slots = 120;
  const auto rows = TimeSimulation(&model, s.manifest, s.graphs, s.ecdf, options);
  ASSERT_EQ(rows.size(), s.graphs.size() * 3);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    EXPECT_EQ(rows[i].method, "vanilla");
    EXPECT_EQ(rows[i + 1].method, "stat");
    EXPECT_EQ(rows[i + 2].method, "gcn");
    EXPECT_EQ(rows[i].rr_avg_degree, 1.0);
    EXPECT_EQ(rows[i].rr_messages, 1.0);
    for (int k = 0; k < 3; ++k) {
      const auto& r = rows[i + k];
      EXPECT_EQ(r.delivered + r.residual, r.arrivals);
      EXPECT_EQ(r.arrivals, rows[i].arrivals);
      EXPECT_EQ(r.mean_queue.size(), 120u);
      EXPECT_GE(r.rr_avg_degree, 0.0);
    }
  }
  const auto again = TimeSimulation(&model, s.manifest, s.graphs, s.ecdf, options);
  EXPECT_EQ(TimeSimCsv(rows), TimeSimCsv(again));
  EXPECT_EQ(TimeSimCsv(rows).substr(0, TimeSimCsv(rows).find('\n')),
            "graph_id,V,d_bar,method,rr_avg_degree,rr_messages,delivered,arrivals");

  const auto baseline_only = TimeSimulation(nullptr, s.manifest, s.graphs, s.ecdf, options);
  EXPECT_EQ(baseline_only.size(), s.graphs.size() * 2);

  options.mu_min = 0.0;
  EXPECT_THROW(TimeSimulation(&model, s.manifest, s.graphs, s.ecdf, options), ParameterError);
}

}  // namespace
}  // namespace linksparse
