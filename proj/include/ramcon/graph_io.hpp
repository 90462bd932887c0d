#pragma once

#include <filesystem>
#include <iosfwd>

#include "ramcon/graph.hpp"

namespace ramcon {

// Edge-list interchange format:
//
//   N M
//   u v        (M lines, 0-indexed, u <= v)
//
// Dropped loops are written as "u u" lines and count toward M, so a graph
// round-trips with its pre-removal degrees intact. Reading marks the graph as
// a multigraph only if the file repeats a pair.

void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

void write_edge_list(const std::filesystem::path& path, const Graph& g);
Graph read_edge_list(const std::filesystem::path& path);

}  // namespace ramcon
