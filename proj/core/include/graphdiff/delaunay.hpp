#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "graphdiff/graph.hpp"

namespace graphdiff {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise, 0 collinear.
/// Exact for all finite doubles (floating filter, rational fallback).
int orient2d(const Point2& a, const Point2& b, const Point2& c);

/// +1 if d lies strictly inside the circle through a, b, c (given counter-clockwise),
/// -1 if strictly outside, 0 if on it. Exact for all finite doubles.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Thrown for inputs with no triangulation: fewer than three points, repeated
/// points, or all points collinear.
class DegeneratePointSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Triangulation {
  /// Counter-clockwise vertex triples.
  std::vector<std::array<int, 3>> triangles;
  /// Boundary vertices in counter-clockwise order, collinear boundary points included.
  std::vector<int> hull;
};

/// Delaunay triangulation by a lexicographic sweep followed by Lawson edge flips.
/// An edge is flipped only when the opposite vertex is strictly inside the
/// circumcircle, so cocircular quadruples keep the sweep's diagonal.
Triangulation delaunay(const std::vector<Point2>& points);

/// Union of triangle edges as a graph on points.size() nodes.
Graph triangulation_graph(const Triangulation& tri, int n);

}  // namespace graphdiff
