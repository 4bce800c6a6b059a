#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "graphdiff/graph.hpp"

namespace graphdiff {

/// Orbits 4..14 of the connected 4-node graphlets, stored at index orbit - 4:
///   4/5 path end/middle, 6/7 star leaf/centre, 8 cycle,
///   9/10/11 paw pendant/degree-2/degree-3, 12/13 diamond degree-2/degree-3, 14 clique.
inline constexpr int kOrbitCount = 11;
inline constexpr int kFirstOrbit = 4;

using OrbitRow = std::array<std::uint64_t, kOrbitCount>;

/// Per-node orbit counts over every connected induced 4-node subgraph,
/// enumerated once each with ESU.
std::vector<OrbitRow> orbit_counts(const Graph& g);

/// Same counts from all C(n, 4) node subsets; reference implementation.
std::vector<OrbitRow> orbit_counts_naive(const Graph& g);

/// Column means of the per-node counts; zero for n < 4.
std::vector<double> orbit_mean_vector(const std::vector<OrbitRow>& counts);
inline std::vector<double> orbit_mean_vector(const Graph& g) { return orbit_mean_vector(orbit_counts(g)); }

}  // namespace graphdiff
