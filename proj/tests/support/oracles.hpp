#pragma once

// Reference computations for the tests. They are written from the defining
// formulas and share no code with the library beyond the Graph container.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphdiff/delaunay.hpp"
#include "graphdiff/graph.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// beta_bar_t = t / (2T), exactly.
inline std::vector<Rational> linear_beta_bar(int steps) {
  std::vector<Rational> bb;
  for (int t = 0; t <= steps; ++t) bb.emplace_back(t, 2 * steps);
  return bb;
}

/// Single-step flips recovered from cumulative ones by solving
/// 1 - 2 bb_t = (1 - 2 bb_{t-1})(1 - 2 beta_t).
inline std::vector<Rational> step_flips(const std::vector<Rational>& bb) {
  std::vector<Rational> beta;
  for (std::size_t t = 1; t < bb.size(); ++t) {
    const Rational keep_prev = 1 - 2 * bb[t - 1];
    const Rational keep = 1 - 2 * bb[t];
    beta.push_back((1 - keep / keep_prev) / 2);
  }
  return beta;
}

/// 2x2 row-stochastic transition of one pair, [from][to].
using Mat2 = std::array<std::array<Rational, 2>, 2>;

inline Mat2 flip_matrix(const Rational& p) { return {{{1 - p, p}, {p, 1 - p}}}; }

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return c;
}

/// P(a_{t-1} = 1 | a_t, a_0) by Bayes' rule from the one-step and marginal transitions.
inline Rational bayes_posterior(const std::vector<Rational>& bb, const std::vector<Rational>& beta, int t, int a_t,
                                int a_0) {
  const Mat2 step = flip_matrix(beta[t - 1]);
  const Mat2 prev = flip_matrix(bb[t - 1]);
  const Mat2 cur = flip_matrix(bb[t]);
  return step[1][a_t] * prev[a_0][1] / cur[a_0][a_t];
}

/// Per-pair posterior mean of A_0 given a_t under a uniform prior over `data`
/// (pair bits as integers), flips with probability bb.
inline std::vector<double> bayes_denoise(const std::vector<std::uint64_t>& data, int pairs, std::uint64_t a_t, double bb) {
  std::vector<double> w(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const int d = std::popcount(data[k] ^ a_t);
    w[k] = std::pow(bb, d) * std::pow(1.0 - bb, pairs - d);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> p(static_cast<std::size_t>(pairs), 0.0);
  for (std::size_t k = 0; k < data.size(); ++k) {
    for (int e = 0; e < pairs; ++e) {
      if ((data[k] >> e) & 1u) p[e] += w[k] / total;
    }
  }
  return p;
}

/// Probability of every 2^pairs target state under independent per-pair
/// Bernoulli(q[e]).
inline std::vector<double> product_law(const std::vector<double>& q) {
  const int pairs = static_cast<int>(q.size());
  std::vector<double> law(std::size_t{1} << pairs, 1.0);
  for (std::uint64_t s = 0; s < law.size(); ++s) {
    for (int e = 0; e < pairs; ++e) law[s] *= ((s >> e) & 1u) ? q[e] : 1.0 - q[e];
  }
  return law;
}

enum class Chain { vb, simple };

/// Exact output law of the reverse chain with the Bayes-optimal denoiser over
/// `data`, linear schedule, enumerating all 2^pairs states at every step.
inline std::vector<double> exact_sampler_law(const std::vector<std::uint64_t>& data, int pairs, int steps, Chain chain) {
  const auto bb = linear_beta_bar(steps);
  const auto beta = step_flips(bb);
  const std::size_t states = std::size_t{1} << pairs;
  std::vector<double> dist(states, 1.0 / static_cast<double>(states));
  for (int t = steps; t >= 1; --t) {
    std::vector<double> next(states, 0.0);
    for (std::uint64_t s = 0; s < states; ++s) {
      if (dist[s] == 0.0) continue;
      const auto p = bayes_denoise(data, pairs, s, to_double(bb[t]));
      std::vector<double> q(static_cast<std::size_t>(pairs));
      for (int e = 0; e < pairs; ++e) {
        const int a = static_cast<int>((s >> e) & 1u);
        if (t == 1) {
          q[e] = p[e];
        } else if (chain == Chain::vb) {
          q[e] = p[e] * to_double(bayes_posterior(bb, beta, t, a, 1)) +
                 (1.0 - p[e]) * to_double(bayes_posterior(bb, beta, t, a, 0));
        } else {
          const double f = to_double(bb[t - 1]);
          q[e] = p[e] * (1.0 - f) + (1.0 - p[e]) * f;
        }
      }
      const auto law = product_law(q);
      for (std::size_t r = 0; r < states; ++r) next[r] += dist[s] * law[r];
    }
    dist = std::move(next);
  }
  return dist;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return 0.5 * s;
}

/// Pair bits of g as an integer (small graphs only).
inline std::uint64_t pair_code(const graphdiff::Graph& g) {
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (int i = 0; i < g.node_count(); ++i) {
    for (int j = i + 1; j < g.node_count(); ++j, ++k) {
      if (g.has_edge(i, j)) code |= std::uint64_t{1} << k;
    }
  }
  return code;
}

inline bool isomorphic(const graphdiff::Graph& a, const graphdiff::Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  const int n = a.node_count();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) ok = a.has_edge(i, j) == b.has_edge(perm[i], perm[j]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline graphdiff::Graph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  graphdiff::Graph g(n);
  for (auto [i, j] : edges) g.set_edge(i, j);
  return g;
}

/// Triangles through each node by checking every node triple.
inline std::vector<long> triangles_per_node(const graphdiff::Graph& g) {
  const int n = g.node_count();
  std::vector<long> tri(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
          ++tri[a];
          ++tri[b];
          ++tri[c];
        }
      }
    }
  }
  return tri;
}

/// Sign of the exact circumcircle determinant: > 0 if d is inside circle(a, b, c), a, b, c counter-clockwise.
inline int exact_incircle(const graphdiff::Point2& a, const graphdiff::Point2& b, const graphdiff::Point2& c,
                          const graphdiff::Point2& d) {
  const Rational m[3][3] = {
      {Rational(a.x) - Rational(d.x), Rational(a.y) - Rational(d.y), 0},
      {Rational(b.x) - Rational(d.x), Rational(b.y) - Rational(d.y), 0},
      {Rational(c.x) - Rational(d.x), Rational(c.y) - Rational(d.y), 0},
  };
  Rational rows[3][3];
  for (int r = 0; r < 3; ++r) {
    rows[r][0] = m[r][0];
    rows[r][1] = m[r][1];
    rows[r][2] = m[r][0] * m[r][0] + m[r][1] * m[r][1];
  }
  const Rational det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
                       rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
                       rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

inline int exact_orient(const graphdiff::Point2& a, const graphdiff::Point2& b, const graphdiff::Point2& c) {
  const Rational det = (Rational(b.x) - Rational(a.x)) * (Rational(c.y) - Rational(a.y)) -
                       (Rational(b.y) - Rational(a.y)) * (Rational(c.x) - Rational(a.x));
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

/// Delaunay edges by the empty-circumcircle test over all triples (general position assumed).
inline std::set<std::pair<int, int>> brute_delaunay_edges(const std::vector<graphdiff::Point2>& pts,
                                                          std::size_t* triangle_count = nullptr) {
  const int n = static_cast<int>(pts.size());
  std::set<std::pair<int, int>> edges;
  std::size_t count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const int o = exact_orient(pts[a], pts[b], pts[c]);
        if (o == 0) continue;
        const int p = a, q = o > 0 ? b : c, r = o > 0 ? c : b;
        bool empty = true;
        for (int d = 0; d < n && empty; ++d) {
          if (d != a && d != b && d != c) empty = exact_incircle(pts[p], pts[q], pts[r], pts[d]) < 0;
        }
        if (!empty) continue;
        ++count;
        edges.insert({a, b});
        edges.insert({a, c});
        edges.insert({b, c});
      }
    }
  }
  if (triangle_count) *triangle_count = count;
  return edges;
}

/// Number of points on the convex hull boundary, collinear boundary points included.
inline int hull_size(const std::vector<graphdiff::Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  int count = 0;
  for (int p = 0; p < n; ++p) {
    // p is on the boundary iff some line through p has every point on one closed side.
    bool boundary = false;
    for (int q = 0; q < n && !boundary; ++q) {
      if (q == p) continue;
      bool left = true, right = true;
      for (int r = 0; r < n; ++r) {
        const int o = exact_orient(pts[p], pts[q], pts[r]);
        if (o < 0) left = false;
        if (o > 0) right = false;
      }
      boundary = left || right;
    }
    count += boundary ? 1 : 0;
  }
  return count;
}

}  // namespace oracle
