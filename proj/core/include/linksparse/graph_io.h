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

#ifndef LINKSPARSE_GRAPH_IO_H_
#define LINKSPARSE_GRAPH_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "linksparse/graph.h"

namespace linksparse {

// Graph files come in two flavors:
//   JSON:      {"n": 4, "edges": [[0, 1], [1, 3]]}   (i < j, sorted)
//   edge list: a header line "n m" followed by m lines "i j".
// Readers accept either orientation and unsorted edges; writers always emit
// the canonical form.

std::string GraphToJson(const ConflictGraph& g);
std::string GraphToEdgeList(const ConflictGraph& g);

/// Parses either format; the first non-space character decides ('{' means
/// JSON). Throws DataError on malformed content.
ConflictGraph ParseGraph(std::string_view text);

ConflictGraph ReadGraphFile(const std::filesystem::path& path);
void WriteGraphFile(const std::filesystem::path& path, const ConflictGraph& g);

/// One real per line; blank lines and lines starting with '#' are skipped,
/// and a single leading non-numeric header line is tolerated.
std::vector<double> ReadWeightsFile(const std::filesystem::path& path);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

/// 64-bit FNV-1a, used as a stable content fingerprint in file headers.
std::uint64_t Fingerprint(std::string_view bytes);
std::string FingerprintHex(std::uint64_t fp);

/// Shortest round-trip decimal representation of a double.
std::string FormatDouble(double x);

}  // namespace linksparse

#endif  // LINKSPARSE_GRAPH_IO_H_
