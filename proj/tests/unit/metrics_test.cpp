#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "graphdiff/datasets.hpp"
#include "graphdiff/metrics.hpp"
#include "graphdiff/orbits.hpp"
#include "oracles.hpp"

namespace graphdiff {
namespace {

// Orbit of every node in each connected 4-node graphlet, by template matching
// under all relabelings.
struct Template {
  Graph g;
  std::array<int, 4> orbit;
};

std::vector<Template> templates() {
  return {
      {oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}}), {4, 5, 5, 4}},
      {oracle::make_graph(4, {{0, 1}, {0, 2}, {0, 3}}), {7, 6, 6, 6}},
      {oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), {8, 8, 8, 8}},
      {oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}), {10, 10, 11, 9}},
      {oracle::make_graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), {12, 12, 13, 13}},
      {Graph::complete(4), {14, 14, 14, 14}},
  };
}

std::vector<OrbitRow> template_orbits(const Graph& g) {
  const auto tpl = templates();
  const int n = g.node_count();
  std::vector<OrbitRow> rows(static_cast<std::size_t>(n), OrbitRow{});
  std::array<int, 4> s{};
  for (s[0] = 0; s[0] < n; ++s[0]) {
    for (s[1] = s[0] + 1; s[1] < n; ++s[1]) {
      for (s[2] = s[1] + 1; s[2] < n; ++s[2]) {
        for (s[3] = s[2] + 1; s[3] < n; ++s[3]) {
          std::array<int, 4> p{0, 1, 2, 3};
          bool found = false;
          for (const auto& t : tpl) {
            do {
              bool ok = true;
              for (int a = 0; a < 4 && ok; ++a) {
                for (int b = a + 1; b < 4 && ok; ++b) ok = g.has_edge(s[a], s[b]) == t.g.has_edge(p[a], p[b]);
              }
              if (ok) {
                for (int a = 0; a < 4; ++a) ++rows[s[a]][t.orbit[p[a]] - kFirstOrbit];
                found = true;
              }
            } while (!found && std::next_permutation(p.begin(), p.end()));
            if (found) break;
          }
        }
      }
    }
  }
  return rows;
}

TEST(Clustering, MatchesTriangleOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = gen_er(10, 0.4, rng);
    const auto tri = oracle::triangles_per_node(g);
    const auto deg = degree_sequence(g);
    const auto c = clustering_coefficients(g);
    for (int v = 0; v < 10; ++v) {
      const double expected = deg[v] < 2 ? 0.0 : 2.0 * tri[v] / (deg[v] * (deg[v] - 1.0));
      EXPECT_NEAR(c[v], expected, 1e-15);
    }
  }
  const auto paw = oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_EQ(clustering_coefficients(paw), (std::vector<double>{1.0, 1.0, 1.0 / 3.0, 0.0}));
}

TEST(Histograms, DegreeAndClustering) {
  const auto star = oracle::make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(degree_histogram(star).values, (std::vector<double>{0.0, 0.75, 0.0, 0.25}));
  const auto c = clustering_histogram(Graph::complete(4), 10);
  ASSERT_EQ(c.values.size(), 10u);
  EXPECT_EQ(c.values.back(), 1.0);
  const auto paw = oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto h = clustering_histogram(paw, 100).values;
  EXPECT_DOUBLE_EQ(h[0], 0.25);
  EXPECT_DOUBLE_EQ(h[33], 0.25);
  EXPECT_DOUBLE_EQ(h[99], 0.5);
  EXPECT_DOUBLE_EQ(std::accumulate(h.begin(), h.end(), 0.0), 1.0);
}

TEST(Orbits, SmallGraphGoldens) {
  auto only = [](std::uint64_t orbit) {
    OrbitRow r{};
    r[orbit - kFirstOrbit] = 1;
    return r;
  };
  for (const auto& row : orbit_counts(Graph::complete(4))) EXPECT_EQ(row, only(14));
  for (const auto& row : orbit_counts(oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}))) EXPECT_EQ(row, only(8));
  const auto path = orbit_counts(oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(path[0], only(4));
  EXPECT_EQ(path[1], only(5));
  EXPECT_EQ(path[2], only(5));
  EXPECT_EQ(path[3], only(4));
  // Triangle plus an isolated node has no connected 4-node graphlet.
  for (const auto& row : orbit_counts(oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}}))) EXPECT_EQ(row, OrbitRow{});
  // K5: each node sits in C(4, 3) = 4 copies of K4.
  for (const auto& row : orbit_counts(Graph::complete(5))) EXPECT_EQ(row[14 - kFirstOrbit], 4u);
}

TEST(Orbits, EnumerationMatchesTemplateOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 9));
    const double p = 0.1 + 0.8 * uniform01(rng);
    const auto g = gen_er(n, p, rng);
    const auto fast = orbit_counts(g);
    EXPECT_EQ(fast, template_orbits(g)) << "trial " << trial;
    EXPECT_EQ(fast, orbit_counts_naive(g));
  }
}

TEST(Orbits, ThreePathAndTriangleRelation) {
  // Each 4-node graphlet containing v as its unique degree-3 node is counted
  // once per choice of 3 neighbors of v: C(deg, 3) = o7 + o11 + o13 + o14.
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = gen_er(11, 0.5, rng);
    const auto rows = orbit_counts(g);
    const auto deg = degree_sequence(g);
    for (int v = 0; v < 11; ++v) {
      const auto d = static_cast<std::uint64_t>(deg[v]);
      const auto choose3 = d < 3 ? 0 : d * (d - 1) * (d - 2) / 6;
      const auto& r = rows[v];
      EXPECT_EQ(choose3, r[7 - 4] + r[11 - 4] + r[13 - 4] + r[14 - 4]);
    }
  }
}

TEST(Orbits, MeanVector) {
  EXPECT_EQ(orbit_mean_vector(Graph(3)), std::vector<double>(kOrbitCount, 0.0));
  const auto m = orbit_mean_vector(oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_DOUBLE_EQ(m[0], 0.5);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
}

TEST(Distances, EmdAndTotalVariation) {
  EXPECT_DOUBLE_EQ(emd_1d({1, 0, 0}, {0, 0, 1}, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(emd_1d({1, 0}, {0, 0, 1}, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(emd_1d({0.5, 0.5}, {0.5, 0.5}, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(total_variation({1, 0}, {0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(total_variation({0.5, 0.5}, {0.5}), 0.25);
}

TEST(Mmd, ClosedFormTwoPoints) {
  const KernelSpec k{KernelKind::gaussian_emd, 1.0, 1.0};
  const StatVector a{StatKind::degree_hist, {1.0, 0.0}};
  const StatVector b{StatKind::degree_hist, {0.0, 1.0}};
  EXPECT_NEAR(kernel_value(a, b, k), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(mmd({a}, {b}, k), 2.0 * (1.0 - std::exp(-0.5)), 1e-15);
  EXPECT_EQ(mmd({a, b}, {a, b}, k), 0.0);
}

TEST(Mmd, SymmetricPermutationInvariantNonNegative) {
  Rng rng(4);
  std::vector<StatVector> x, y;
  GraphBatch gx, gy;
  for (int k = 0; k < 12; ++k) {
    gx.push_back(gen_er(12, 0.3, rng));
    gy.push_back(gen_er(12, 0.6, rng));
    x.push_back(degree_histogram(gx.back()));
    y.push_back(degree_histogram(gy.back()));
  }
  const KernelSpec k{KernelKind::gaussian_emd, 1.0, 1.0};
  const double xy = mmd(x, y, k);
  EXPECT_GT(xy, 0.0);
  EXPECT_NEAR(xy, mmd(y, x, k), 1e-12);
  EXPECT_NEAR(xy, mmd(x, y, k, 3), 1e-12);
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<StatVector> xp;
  for (const auto& g : gx) xp.push_back(degree_histogram(g.permuted(perm)));
  EXPECT_NEAR(mmd(xp, y, k), xy, 1e-12);
}

TEST(Mmd, Validation) {
  const StatVector a{StatKind::degree_hist, {1.0}};
  const StatVector o{StatKind::orbit_counts, {1.0}};
  EXPECT_THROW(mmd({}, {a}, {}), std::invalid_argument);
  EXPECT_THROW(mmd({a}, {a}, {KernelKind::gaussian_emd, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(mmd({a}, {o}, {}), std::invalid_argument);
  EXPECT_EQ(parse_kernel_kind("gaussian-tv"), KernelKind::gaussian_tv);
  EXPECT_THROW(parse_kernel_kind("rbf"), std::invalid_argument);
}

TEST(Evaluate, SelfComparisonIsZeroAndAverageIsMean) {
  DatasetSpec spec;
  spec.kind = DatasetKind::community_small;
  spec.count = 10;
  spec.seed = 7;
  const auto ref = gen_dataset(spec);
  const auto self = evaluate(ref, ref);
  EXPECT_EQ(self.degree, 0.0);
  EXPECT_EQ(self.clustering, 0.0);
  EXPECT_EQ(self.orbit, 0.0);
  spec.kind = DatasetKind::er;
  spec.er_nodes = 16;
  const auto other = evaluate(gen_dataset(spec), ref);
  EXPECT_GT(other.degree, 0.0);
  EXPECT_NEAR(other.avg, (other.degree + other.clustering + other.orbit) / 3.0, 1e-15);
}

}  // namespace
}  // namespace graphdiff
