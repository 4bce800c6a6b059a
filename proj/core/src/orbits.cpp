#include "graphdiff/orbits.hpp"

#include <algorithm>

namespace graphdiff {

namespace {

class Adjacency {
 public:
  explicit Adjacency(const Graph& g) : n_(g.node_count()), bits_(static_cast<std::size_t>(n_) * n_) {
    for (auto [i, j] : g.edges()) {
      bits_[static_cast<std::size_t>(i) * n_ + j] = 1;
      bits_[static_cast<std::size_t>(j) * n_ + i] = 1;
    }
  }
  bool operator()(int i, int j) const { return bits_[static_cast<std::size_t>(i) * n_ + j] != 0; }

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

// Adds the orbit of every member of a connected induced 4-node subgraph.
void record(const Adjacency& adj, const std::array<int, 4>& nodes, std::vector<OrbitRow>& out) {
  std::array<int, 4> deg{};
  int edges = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (adj(nodes[a], nodes[b])) {
        ++deg[a];
        ++deg[b];
        ++edges;
      }
    }
  }
  const int max_deg = *std::max_element(deg.begin(), deg.end());
  // Three edges with an isolated member form a triangle plus a point.
  if (edges < 3 || *std::min_element(deg.begin(), deg.end()) == 0) return;
  for (int a = 0; a < 4; ++a) {
    int orbit = 0;
    switch (edges) {
      case 3: orbit = max_deg == 3 ? (deg[a] == 3 ? 7 : 6) : (deg[a] == 1 ? 4 : 5); break;
      case 4: orbit = max_deg == 3 ? 8 + deg[a] : 8; break;
      case 5: orbit = deg[a] == 2 ? 12 : 13; break;
      case 6: orbit = 14; break;
      default: return;
    }
    ++out[nodes[a]][orbit - kFirstOrbit];
  }
}

}  // namespace

std::vector<OrbitRow> orbit_counts(const Graph& g) {
  const int n = g.node_count();
  std::vector<OrbitRow> out(static_cast<std::size_t>(n), OrbitRow{});
  if (n < 4) return out;
  const Adjacency adj(g);
  const auto nbrs = g.adjacency_lists();

  std::array<int, 4> sub{};
  // ESU: extend from root v using only vertices > v that are "exclusive"
  // neighbours of the newest member, so each connected subset appears once.
  auto exclusive = [&](int w, int v, int size, std::vector<int>& ext) {
    for (int u : nbrs[w]) {
      if (u <= v) continue;
      bool seen = false;
      for (int s = 0; s < size && !seen; ++s) seen = sub[s] == u || adj(sub[s], u);
      if (!seen && std::find(ext.begin(), ext.end(), u) == ext.end()) ext.push_back(u);
    }
  };
  auto extend = [&](auto& self, int size, std::vector<int> ext, int v) -> void {
    if (size == 4) {
      record(adj, sub, out);
      return;
    }
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      exclusive(w, v, size, next);
      sub[size] = w;
      self(self, size + 1, std::move(next), v);
    }
  };
  for (int v = 0; v < n; ++v) {
    sub[0] = v;
    std::vector<int> ext;
    for (int u : nbrs[v]) {
      if (u > v) ext.push_back(u);
    }
    extend(extend, 1, std::move(ext), v);
  }
  return out;
}

std::vector<OrbitRow> orbit_counts_naive(const Graph& g) {
  const int n = g.node_count();
  std::vector<OrbitRow> out(static_cast<std::size_t>(n), OrbitRow{});
  const Adjacency adj(g);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int d = c + 1; d < n; ++d) record(adj, {a, b, c, d}, out);
      }
    }
  }
  return out;
}

std::vector<double> orbit_mean_vector(const std::vector<OrbitRow>& counts) {
  std::vector<double> mean(kOrbitCount, 0.0);
  if (counts.size() < 4) return mean;
  for (const auto& row : counts) {
    for (int k = 0; k < kOrbitCount; ++k) mean[k] += static_cast<double>(row[k]);
  }
  for (auto& m : mean) m /= static_cast<double>(counts.size());
  return mean;
}

}  // namespace graphdiff
