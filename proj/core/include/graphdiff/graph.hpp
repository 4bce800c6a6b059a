#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace graphdiff {

/// Number of unordered pairs {i, j}, i < j, over n nodes.
constexpr std::size_t pair_count(int n) noexcept {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Row-major position of the pair (i, j) in the upper triangle, 0 <= i < j < n.
/// Throws IndexError for i == j or indices out of range.
std::size_t edge_index(int i, int j, int n);

/// Inverse of edge_index.
std::pair<int, int> edge_pair(std::size_t index, int n);

/// Simple undirected graph stored as a bit set over the upper-triangular pairs.
///
/// Self-loops and multi-edges cannot be expressed. `has_edge(i, j)` and
/// `has_edge(j, i)` read the same bit.
class Graph {
 public:
  Graph() : Graph(1) {}
  explicit Graph(int n);

  static Graph complete(int n);
  /// Builds a graph from a 0/1 vector in edge_index order.
  static Graph from_pair_bits(int n, const std::vector<std::uint8_t>& bits);

  int node_count() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return graphdiff::pair_count(n_); }
  std::size_t edge_count() const noexcept;

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present = true);

  bool pair_bit(std::size_t index) const noexcept {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  void set_pair_bit(std::size_t index, bool present) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (index & 63);
    if (present) {
      words_[index >> 6] |= mask;
    } else {
      words_[index >> 6] &= ~mask;
    }
  }
  void flip_pair_bit(std::size_t index) noexcept { words_[index >> 6] ^= std::uint64_t{1} << (index & 63); }

  /// Number of pairs on which the two graphs differ. Both must have equal n.
  std::size_t hamming_distance(const Graph& other) const;

  /// Packed storage; bits past pair_count() are always zero.
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Edges as (i, j) with i < j in edge_index order.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<std::vector<int>> adjacency_lists() const;

  /// Relabels nodes: node v of this graph becomes node perm[v].
  Graph permuted(const std::vector<int>& perm) const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator<(const Graph& a, const Graph& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.words_ < b.words_;
  }

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// Ordered collection of graphs; node counts may differ between members.
using GraphBatch = std::vector<Graph>;

std::vector<int> degree_sequence(const Graph& g);

/// Graph with nodes relabelled densely 0..k-1 in ascending order of the input labels.
/// Self-loops and repeated pairs in `labelled_edges` are rejected with std::invalid_argument.
Graph from_labelled_edges(const std::vector<std::pair<long long, long long>>& labelled_edges);

bool is_connected(const Graph& g);

}  // namespace graphdiff
