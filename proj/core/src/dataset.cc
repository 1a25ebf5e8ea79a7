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

#include "linksparse/dataset.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "json.hpp"
#include "linksparse/errors.h"
#include "linksparse/graph_io.h"
#include "linksparse/parallel.h"
#include "linksparse/random.h"

namespace linksparse {

using nlohmann::json;

ConflictGraph GraphEntry::Generate() const { return GenerateErdosRenyi(n, p, seed); }

namespace {

int ScaledCount(int full, double scale) {
  if (!(scale > 0.0)) throw ParameterError("dataset scale must be positive");
  return std::max(1, static_cast<int>(std::lround(full * scale)));
}

void AddCell(DatasetManifest& m, VertexId n, double p, double d_bar, int count) {
  for (int k = 0; k < count; ++k) {
    GraphEntry e;
    e.n = n;
    e.p = p;
    e.d_bar = d_bar;
    e.seed = DeriveSeed(m.seed, m.entries.size());
    m.entries.push_back(std::move(e));
  }
}

}  // namespace

DatasetManifest TrainingRecipe(std::uint64_t seed, double scale) {
  DatasetManifest m{"train", seed, scale, {}};
  const int per_degree_cell = ScaledCount(200, scale);
  for (VertexId n : {100, 150, 200, 250, 300}) {
    for (double d_bar : {2.0, 5.0, 7.5, 10.0, 12.5}) {
      AddCell(m, n, d_bar / n, d_bar, per_degree_cell);
    }
  }
  const int per_density_cell = ScaledCount(50, scale);
  for (VertexId n : {30, 100}) {
    for (int tenth = 1; tenth <= 9; ++tenth) {
      const double p = tenth / 10.0;
      AddCell(m, n, p, n * p, per_density_cell);
    }
  }
  return m;
}

DatasetManifest TestRecipe(std::uint64_t seed, double scale) {
  DatasetManifest m{"test", seed, scale, {}};
  const int per_cell = ScaledCount(20, scale);
  for (VertexId n : {100, 150, 200, 250, 300}) {
    for (double d_bar : {2.0, 5.0, 10.0, 15.0, 20.0}) {
      AddCell(m, n, d_bar / n, d_bar, per_cell);
    }
  }
  return m;
}

DatasetManifest SliceManifest(const DatasetManifest& manifest, VertexId max_n,
                              int per_cell) {
  DatasetManifest out{manifest.split, manifest.seed, manifest.scale, {}};
  std::map<std::pair<VertexId, double>, int> taken;
  for (const auto& e : manifest.entries) {
    if (e.n > max_n) continue;
    int& count = taken[{e.n, e.d_bar}];
    if (count >= per_cell) continue;
    ++count;
    out.entries.push_back(e);
  }
  return out;
}

std::vector<ConflictGraph> GenerateGraphs(const DatasetManifest& manifest) {
  std::vector<ConflictGraph> graphs(manifest.entries.size());
  ParallelFor(graphs.size(),
              [&](std::size_t i) { graphs[i] = manifest.entries[i].Generate(); });
  return graphs;
}

std::string ManifestToJson(const DatasetManifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"file", e.file},
                       {"n", e.n},
                       {"p", e.p},
                       {"d_bar", e.d_bar},
                       {"seed", e.seed},
                       {"m", e.m}});
  }
  json doc{{"split", manifest.split},
           {"seed", manifest.seed},
           {"scale", manifest.scale},
           {"count", manifest.entries.size()},
           {"entries", std::move(entries)}};
  return doc.dump(1) + "\n";
}

DatasetManifest ManifestFromJson(std::string_view text) {
  DatasetManifest m;
  try {
    const json doc = json::parse(text);
    m.split = doc.at("split").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.scale = doc.value("scale", 1.0);
    for (const auto& e : doc.at("entries")) {
      GraphEntry entry;
      entry.file = e.value("file", std::string());
      entry.n = e.at("n").get<VertexId>();
      entry.p = e.at("p").get<double>();
      entry.d_bar = e.at("d_bar").get<double>();
      entry.seed = e.at("seed").get<std::uint64_t>();
      entry.m = e.value("m", std::int64_t{-1});
      m.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
  return m;
}

void WriteDataset(const std::filesystem::path& dir, DatasetManifest& manifest) {
  std::filesystem::create_directories(dir);
  ParallelFor(manifest.entries.size(), [&](std::size_t i) {
    auto& e = manifest.entries[i];
    char name[32];
    std::snprintf(name, sizeof(name), "graph_%05zu.json", i);
    const ConflictGraph g = e.Generate();
    e.file = name;
    e.m = g.num_edges();
    WriteGraphFile(dir / name, g);
  });
  WriteTextFile(dir / "manifest.json", ManifestToJson(manifest));
}

std::vector<ConflictGraph> LoadDataset(const std::filesystem::path& manifest_path,
                                       DatasetManifest* manifest_out) {
  DatasetManifest manifest = ManifestFromJson(ReadTextFile(manifest_path));
  const auto dir = manifest_path.parent_path();
  std::vector<ConflictGraph> graphs(manifest.entries.size());
  ParallelFor(graphs.size(), [&](std::size_t i) {
    auto& e = manifest.entries[i];
    graphs[i] = e.file.empty() ? e.Generate() : ReadGraphFile(dir / e.file);
    if (graphs[i].num_vertices() != e.n) {
      throw DataError("manifest entry " + std::to_string(i) + ": n = " +
                      std::to_string(e.n) + " but graph has " +
                      std::to_string(graphs[i].num_vertices()) + " vertices");
    }
    if (e.m >= 0 && graphs[i].num_edges() != e.m) {
      throw DataError("manifest entry " + std::to_string(i) + ": m = " +
                      std::to_string(e.m) + " but graph has " +
                      std::to_string(graphs[i].num_edges()) + " edges");
    }
    e.m = graphs[i].num_edges();
  });
  if (manifest_out) *manifest_out = std::move(manifest);
  return graphs;
}

}  // namespace linksparse
