#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "graphdiff/delaunay.hpp"
#include "graphdiff/random.hpp"
#include "oracles.hpp"

namespace graphdiff {
namespace {

std::vector<Point2> random_points(int n, Rng& rng) {
  std::vector<Point2> pts;
  for (int k = 0; k < n; ++k) pts.push_back({uniform01(rng), uniform01(rng)});
  return pts;
}

std::set<std::pair<int, int>> edge_set(const Triangulation& tri) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : tri.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return edges;
}

void expect_valid(const std::vector<Point2>& pts, const Triangulation& tri) {
  const int n = static_cast<int>(pts.size());
  const int h = oracle::hull_size(pts);
  EXPECT_EQ(static_cast<int>(tri.hull.size()), h);
  EXPECT_EQ(static_cast<int>(tri.triangles.size()), 2 * n - 2 - h);
  EXPECT_EQ(static_cast<int>(edge_set(tri).size()), 3 * n - 3 - h);
  for (const auto& t : tri.triangles) {
    ASSERT_EQ(oracle::exact_orient(pts[t[0]], pts[t[1]], pts[t[2]]), 1);
    for (int d = 0; d < n; ++d) {
      if (d == t[0] || d == t[1] || d == t[2]) continue;
      ASSERT_LE(oracle::exact_incircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[d]), 0);
    }
  }
}

TEST(Predicates, MatchExactArithmeticNearDegeneracy) {
  // Points straddling the line y = x at the resolution of doubles.
  const double base = 0.5;
  const double ulp = std::ldexp(1.0, -53);
  const Point2 b{12.0, 12.0}, c{24.0, 24.0};
  int disagreements = 0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Point2 a{base + i * ulp, base + j * ulp};
      disagreements += orient2d(a, b, c) != oracle::exact_orient(a, b, c);
    }
  }
  EXPECT_EQ(disagreements, 0);
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    // d nearly on the unit circle through a, b, c.
    const double angle = uniform01(rng) * 6.283185307179586;
    const Point2 a{1.0, 0.0}, pb{0.0, 1.0}, pc{-1.0, 0.0};
    const Point2 d{std::cos(angle), std::sin(angle)};
    ASSERT_EQ(incircle(a, pb, pc, d), oracle::exact_incircle(a, pb, pc, d));
  }
}

TEST(Predicates, ExactZeroOnDegenerateInputs) {
  EXPECT_EQ(orient2d({0, 0}, {1, 1}, {3, 3}), 0);
  EXPECT_EQ(orient2d({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient2d({0, 0}, {0, 1}, {1, 0}), -1);
  EXPECT_EQ(incircle({1, 0}, {0, 1}, {-1, 0}, {0, -1}), 0);
  EXPECT_EQ(incircle({1, 0}, {0, 1}, {-1, 0}, {0, 0}), 1);
  EXPECT_EQ(incircle({1, 0}, {0, 1}, {-1, 0}, {2, 2}), -1);
}

TEST(Delaunay, MatchesBruteForceOnSmallSets) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 8));
    const auto pts = random_points(n, rng);
    const auto tri = delaunay(pts);
    std::size_t brute_triangles = 0;
    EXPECT_EQ(edge_set(tri), oracle::brute_delaunay_edges(pts, &brute_triangles)) << "trial " << trial;
    EXPECT_EQ(tri.triangles.size(), brute_triangles);
    expect_valid(pts, tri);
  }
}

TEST(Delaunay, EulerCountsOnLargerSets) {
  Rng rng(6);
  for (int n : {20, 60, 150}) {
    const auto pts = random_points(n, rng);
    expect_valid(pts, delaunay(pts));
  }
}

TEST(Delaunay, CocircularGrid) {
  std::vector<Point2> pts;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
  }
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.hull.size(), 16u);
  expect_valid(pts, tri);
}

TEST(Delaunay, HullIsCounterClockwiseFromLowestIndex) {
  // Square with a midpoint on the bottom side and one interior point.
  const std::vector<Point2> pts{{0.5, 0.4}, {2, 0}, {2, 2}, {0, 2}, {0, 0}, {1, 0}};
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.hull, (std::vector<int>{1, 2, 3, 4, 5}));
  expect_valid(pts, tri);
}

TEST(Delaunay, CollinearPrefixThenApex) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, 1}};
  const auto tri = delaunay(pts);
  EXPECT_EQ(tri.triangles.size(), 3u);
  expect_valid(pts, tri);
}

TEST(Delaunay, DegenerateInputsThrow) {
  EXPECT_THROW(delaunay({{0, 0}, {1, 1}}), DegeneratePointSet);
  EXPECT_THROW(delaunay({{0, 0}, {1, 1}, {2, 2}, {5, 5}}), DegeneratePointSet);
  EXPECT_THROW(delaunay({{0, 0}, {1, 0}, {0, 1}, {1, 0}}), DegeneratePointSet);
  EXPECT_THROW(delaunay({{0, 0}, {1, 0}, {0, std::numeric_limits<double>::quiet_NaN()}}), DegeneratePointSet);
}

TEST(Delaunay, GraphHasTriangulationEdges) {
  Rng rng(7);
  const auto pts = random_points(30, rng);
  const auto tri = delaunay(pts);
  const auto g = triangulation_graph(tri, 30);
  EXPECT_EQ(g.edge_count(), edge_set(tri).size());
  for (auto [a, b] : edge_set(tri)) EXPECT_TRUE(g.has_edge(a, b));
  EXPECT_TRUE(is_connected(g));
}

}  // namespace
}  // namespace graphdiff
