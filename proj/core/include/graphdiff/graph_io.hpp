#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "graphdiff/graph.hpp"

namespace graphdiff {

// Edge-list text format:
//
//   n=<node count>
//   <i> <j>        one line per edge, 0 <= i, j < n, i != j
//   # comment      anywhere on a line
//
// A blank line ends the current graph. Pairs given as "j i" are accepted and
// written back as "i j"; self-loops, out-of-range nodes and repeated pairs are
// ParseErrors carrying the offending line number.

GraphBatch parse_graphs(std::string_view text);
GraphBatch read_graphs(std::istream& in);
GraphBatch read_graphs(const std::filesystem::path& path);

void write_graphs(std::ostream& out, const GraphBatch& batch);
void write_graphs(const GraphBatch& batch, const std::filesystem::path& path);
std::string format_graphs(const GraphBatch& batch);

/// Graphviz `graph` with one declaration per node and one line per edge.
std::string to_dot(const Graph& g, std::string_view name = "G");

}  // namespace graphdiff
