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

#include "linksparse/graph_io.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "linksparse/errors.h"

namespace linksparse {

using nlohmann::json;

std::string GraphToJson(const ConflictGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.EdgeList()) edges.push_back({a, b});
  json doc;
  doc["n"] = g.num_vertices();
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

std::string GraphToEdgeList(const ConflictGraph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [a, b] : g.EdgeList()) out << a << ' ' << b << '\n';
  return out.str();
}

namespace {

ConflictGraph ParseJsonGraph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw DataError("graph JSON needs an integer field \"n\"");
  }
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 0 || n > std::numeric_limits<VertexId>::max()) {
    throw DataError("graph JSON: bad vertex count");
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const auto& list = doc["edges"];
    if (!list.is_array()) throw DataError("graph JSON: \"edges\" must be an array");
    edges.reserve(list.size());
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw DataError("graph JSON: every edge must be [i, j]");
      }
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
  }
  try {
    return ConflictGraph(static_cast<VertexId>(n), edges);
  } catch (const ParameterError& e) {
    throw DataError(std::string("graph JSON: ") + e.what());
  }
}

ConflictGraph ParseEdgeListGraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::int64_t n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw DataError("edge list: expected header line \"n m\"");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    std::int64_t a, b;
    if (!(in >> a >> b)) {
      throw DataError("edge list: expected " + std::to_string(m) + " edges, got " +
                      std::to_string(k));
    }
    edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  std::string extra;
  if (in >> extra) throw DataError("edge list: trailing content after edges");
  try {
    ConflictGraph g(static_cast<VertexId>(n), edges);
    if (g.num_edges() != m) {
      throw DataError("edge list: header edge count " + std::to_string(m) +
                      " disagrees with " + std::to_string(g.num_edges()) +
                      " distinct edges");
    }
    return g;
  } catch (const ParameterError& e) {
    throw DataError(std::string("edge list: ") + e.what());
  }
}

}  // namespace

ConflictGraph ParseGraph(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? ParseJsonGraph(text) : ParseEdgeListGraph(text);
  }
  throw DataError("empty graph file");
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

ConflictGraph ReadGraphFile(const std::filesystem::path& path) {
  try {
    return ParseGraph(ReadTextFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteGraphFile(const std::filesystem::path& path, const ConflictGraph& g) {
  const bool as_json = path.extension() == ".json";
  WriteTextFile(path, as_json ? GraphToJson(g) : GraphToEdgeList(g));
}

std::vector<double> ReadWeightsFile(const std::filesystem::path& path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<double> w;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r,");
    const std::string token = line.substr(begin, end - begin + 1);
    double x = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw DataError(path.string() + ": not a number: \"" + token + "\"");
    }
    first = false;
    w.push_back(x);
  }
  return w;
}

std::uint64_t Fingerprint(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string FingerprintHex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::string FormatDouble(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace linksparse
