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

#ifndef LINKSPARSE_DATASET_H_
#define LINKSPARSE_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "linksparse/graph.h"

namespace linksparse {

/// One ER graph of a dataset. `d_bar` is the expected average degree n*p;
/// `m` is filled in once the graph has been generated or read.
struct GraphEntry {
  std::string file;  // relative to the manifest directory; may be empty
  VertexId n = 0;
  double p = 0.0;
  double d_bar = 0.0;
  std::uint64_t seed = 0;
  std::int64_t m = -1;

  ConflictGraph Generate() const;
};

struct DatasetManifest {
  std::string split;  // "train", "test" or "calibration"
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::vector<GraphEntry> entries;
};

/// Training mix: (V, d_bar) grid with V in {100..300 step 50} and d_bar in
/// {2, 5, 7.5, 10, 12.5}, 200 graphs each, plus a (V, p) grid with V in
/// {30, 100} and p in {0.1..0.9}, 50 graphs each. `scale` multiplies every
/// per-cell count (rounded, at least 1).
DatasetManifest TrainingRecipe(std::uint64_t seed, double scale = 1.0);

/// Test mix: V in {100..300 step 50}, d_bar in {2, 5, 10, 15, 20}, 20 graphs
/// per cell.
DatasetManifest TestRecipe(std::uint64_t seed, double scale = 1.0);

/// Entries with n <= max_n, keeping at most `per_cell` per (n, d_bar) cell.
DatasetManifest SliceManifest(const DatasetManifest& manifest, VertexId max_n,
                              int per_cell);

std::vector<ConflictGraph> GenerateGraphs(const DatasetManifest& manifest);

/// Writes graph_<index>.json files plus manifest.json into `dir`.
void WriteDataset(const std::filesystem::path& dir, DatasetManifest& manifest);

std::string ManifestToJson(const DatasetManifest& manifest);
DatasetManifest ManifestFromJson(std::string_view json);

/// Reads a manifest and its graphs; entries without a file are generated from
/// their seed. Throws DataError when a file is missing, fails to parse, or
/// disagrees with the recorded n or m.
std::vector<ConflictGraph> LoadDataset(const std::filesystem::path& manifest_path,
                                       DatasetManifest* manifest = nullptr);

}  // namespace linksparse

#endif  // LINKSPARSE_DATASET_H_
