#include "graphdiff/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "graphdiff/errors.hpp"

namespace graphdiff {

namespace {

std::size_t row_start(int i, int n) {
  const auto ii = static_cast<std::size_t>(i);
  return ii * static_cast<std::size_t>(n) - ii * (ii + 1) / 2;
}

void check_node(int v, int n) {
  if (v < 0 || v >= n) {
    throw IndexError("node " + std::to_string(v) + " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

std::size_t edge_index(int i, int j, int n) {
  check_node(i, n);
  check_node(j, n);
  if (i >= j) {
    throw IndexError("edge_index requires i < j, got (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  return row_start(i, n) + static_cast<std::size_t>(j - i - 1);
}

std::pair<int, int> edge_pair(std::size_t index, int n) {
  if (index >= pair_count(n)) {
    throw IndexError("pair index " + std::to_string(index) + " out of range for n=" + std::to_string(n));
  }
  int i = 0;
  while (row_start(i + 1, n) <= index) ++i;
  return {i, i + 1 + static_cast<int>(index - row_start(i, n))};
}

Graph::Graph(int n) : n_(n), words_((graphdiff::pair_count(n) + 63) / 64, 0) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (std::size_t k = 0; k < g.pair_count(); ++k) g.set_pair_bit(k, true);
  return g;
}

Graph Graph::from_pair_bits(int n, const std::vector<std::uint8_t>& bits) {
  Graph g(n);
  if (bits.size() != g.pair_count()) {
    throw std::invalid_argument("pair bit vector has length " + std::to_string(bits.size()) + ", expected " +
                                std::to_string(g.pair_count()));
  }
  for (std::size_t k = 0; k < bits.size(); ++k) g.set_pair_bit(k, bits[k] != 0);
  return g;
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool Graph::has_edge(int i, int j) const {
  if (i == j) {
    check_node(i, n_);
    return false;
  }
  return pair_bit(i < j ? edge_index(i, j, n_) : edge_index(j, i, n_));
}

void Graph::set_edge(int i, int j, bool present) {
  if (i == j) throw IndexError("self-loop (" + std::to_string(i) + ", " + std::to_string(i) + ")");
  set_pair_bit(i < j ? edge_index(i, j, n_) : edge_index(j, i, n_), present);
}

std::size_t Graph::hamming_distance(const Graph& other) const {
  if (other.n_ != n_) throw std::invalid_argument("hamming_distance: node counts differ");
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return total;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count());
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      if (pair_bit(k)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (auto [i, j] : edges()) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("permutation size mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    check_node(p, n_);
    if (seen[static_cast<std::size_t>(p)]++) throw std::invalid_argument("not a permutation");
  }
  Graph out(n_);
  for (auto [i, j] : edges()) out.set_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.node_count()), 0);
  for (auto [i, j] : g.edges()) {
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg;
}

Graph from_labelled_edges(const std::vector<std::pair<long long, long long>>& labelled_edges) {
  std::map<long long, int> index;
  for (auto [u, v] : labelled_edges) {
    index.emplace(u, 0);
    index.emplace(v, 0);
  }
  int next = 0;
  for (auto& [label, id] : index) id = next++;
  Graph g(std::max(next, 1));
  for (auto [u, v] : labelled_edges) {
    if (u == v) throw std::invalid_argument("self-loop on label " + std::to_string(u));
    const int a = index[u];
    const int b = index[v];
    if (g.has_edge(a, b)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.set_edge(a, b);
  }
  return g;
}

bool is_connected(const Graph& g) {
  const auto adj = g.adjacency_lists();
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == adj.size();
}

}  // namespace graphdiff
