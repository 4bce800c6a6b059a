#include "graphdiff/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace graphdiff {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

template <typename T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int orient_exact(const Point2& a, const Point2& b, const Point2& c) {
  const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign_of((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

int incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Rational dx(d.x), dy(d.y);
  const Rational adx = Rational(a.x) - dx, ady = Rational(a.y) - dy;
  const Rational bdx = Rational(b.x) - dx, bdy = Rational(b.y) - dy;
  const Rational cdx = Rational(c.x) - dx, cdy = Rational(c.y) - dy;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  return sign_of(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady));
}

std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

bool same_point(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

// Triangles plus a map from undirected edge to the (at most two) triangles using it.
class Mesh {
 public:
  explicit Mesh(const std::vector<Point2>& pts) : pts_(pts) {}

  void add(int a, int b, int c) {
    const int id = static_cast<int>(tris_.size());
    tris_.push_back({a, b, c});
    link(id);
  }

  void legalize(std::vector<std::uint64_t> pending) {
    while (!pending.empty()) {
      const std::uint64_t key = pending.back();
      pending.pop_back();
      const auto it = owners_.find(key);
      if (it == owners_.end() || it->second[1] < 0) continue;
      const int t1 = it->second[0], t2 = it->second[1];
      const int u = static_cast<int>(key >> 32), v = static_cast<int>(key & 0xffffffffu);
      // Orient so that t1 = (a, b, c) and t2 = (b, a, d).
      auto [a, b, c] = rotated(t1, u, v);
      const int d = opposite(t2, a, b);
      if (incircle(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) continue;
      unlink(t1);
      unlink(t2);
      tris_[t1] = {a, d, c};
      tris_[t2] = {d, b, c};
      link(t1);
      link(t2);
      for (auto [x, y] : {std::pair{a, d}, {d, b}, {b, c}, {c, a}}) pending.push_back(edge_key(x, y));
    }
  }

  std::vector<std::uint64_t> all_edges() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(owners_.size());
    for (const auto& [key, owner] : owners_) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    return keys;
  }

  std::vector<std::array<int, 3>> take() { return std::move(tris_); }

 private:
  void link(int id) {
    const auto& t = tris_[id];
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = owners_.try_emplace(edge_key(t[k], t[(k + 1) % 3]), std::array<int, 2>{id, -1});
      if (!fresh) it->second[1] = id;
    }
  }

  void unlink(int id) {
    const auto& t = tris_[id];
    for (int k = 0; k < 3; ++k) {
      auto it = owners_.find(edge_key(t[k], t[(k + 1) % 3]));
      auto& o = it->second;
      if (o[0] == id) {
        o[0] = o[1];
        o[1] = -1;
      } else {
        o[1] = -1;
      }
      if (o[0] < 0) owners_.erase(it);
    }
  }

  // Rotation of triangle id whose directed edge u->v or v->u comes first.
  std::array<int, 3> rotated(int id, int u, int v) const {
    const auto& t = tris_[id];
    for (int k = 0; k < 3; ++k) {
      const int p = t[k], q = t[(k + 1) % 3];
      if ((p == u && q == v) || (p == v && q == u)) return {p, q, t[(k + 2) % 3]};
    }
    return t;
  }

  int opposite(int id, int a, int b) const {
    for (int x : tris_[id]) {
      if (x != a && x != b) return x;
    }
    return -1;
  }

  const std::vector<Point2>& pts_;
  std::vector<std::array<int, 3>> tris_;
  std::unordered_map<std::uint64_t, std::array<int, 2>> owners_;
};

}  // namespace

int orient2d(const Point2& a, const Point2& b, const Point2& c) {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient_exact(a, b, c);
}

int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bc = bdx * cdy - cdx * bdy, cb = std::abs(bdx * cdy) + std::abs(cdx * bdy);
  const double ca = cdx * ady - adx * cdy, ac = std::abs(cdx * ady) + std::abs(adx * cdy);
  const double ab = adx * bdy - bdx * ady, ba = std::abs(adx * bdy) + std::abs(bdx * ady);
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * bc + blift * ca + clift * ab;
  const double permanent = alift * cb + blift * ac + clift * ba;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

Triangulation delaunay(const std::vector<Point2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw DegeneratePointSet("triangulation needs at least 3 points");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DegeneratePointSet("non-finite point coordinate");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return points[i].x != points[j].x ? points[i].x < points[j].x : points[i].y < points[j].y;
  });
  for (int k = 1; k < n; ++k) {
    if (same_point(points[order[k - 1]], points[order[k]])) throw DegeneratePointSet("repeated point");
  }

  // Leading collinear run. Its "hull" walks the chain out and back so that the
  // first off-line point sees one side of it.
  int run = 2;
  while (run < n && orient2d(points[order[0]], points[order[1]], points[order[run]]) == 0) ++run;
  if (run == n) throw DegeneratePointSet("all points are collinear");

  std::vector<int> hull(order.begin(), order.begin() + run);
  for (int k = run - 2; k >= 1; --k) hull.push_back(order[k]);

  Mesh mesh(points);
  for (int k = run; k < n; ++k) {
    const int p = order[k];
    const auto h = static_cast<int>(hull.size());
    std::vector<bool> visible(static_cast<std::size_t>(h));
    for (int e = 0; e < h; ++e) visible[e] = orient2d(points[hull[e]], points[hull[(e + 1) % h]], points[p]) < 0;
    // Start of the contiguous visible chain.
    int first = -1;
    for (int e = 0; e < h; ++e) {
      if (visible[e] && !visible[(e + h - 1) % h]) {
        first = e;
        break;
      }
    }
    if (first < 0) throw DegeneratePointSet("sweep found no visible hull edge");
    std::vector<std::uint64_t> pending;
    int e = first, count = 0;
    while (visible[e]) {
      const int u = hull[e], v = hull[(e + 1) % h];
      mesh.add(v, u, p);
      pending.push_back(edge_key(u, v));
      e = (e + 1) % h;
      ++count;
    }
    // Replace the interior vertices of the visible chain with p.
    std::vector<int> next;
    next.reserve(static_cast<std::size_t>(h - count + 2));
    const int last = (first + count) % h;
    for (int i = last;; i = (i + 1) % h) {
      next.push_back(hull[i]);
      if (i == first) break;
    }
    next.push_back(p);
    hull = std::move(next);
    mesh.legalize(std::move(pending));
  }
  mesh.legalize(mesh.all_edges());

  // Rotate the hull to start at its smallest index for a canonical form.
  std::rotate(hull.begin(), std::min_element(hull.begin(), hull.end()), hull.end());
  return Triangulation{mesh.take(), std::move(hull)};
}

Graph triangulation_graph(const Triangulation& tri, int n) {
  Graph g(n);
  for (const auto& t : tri.triangles) {
    for (int k = 0; k < 3; ++k) g.set_edge(t[k], t[(k + 1) % 3]);
  }
  return g;
}

}  // namespace graphdiff
