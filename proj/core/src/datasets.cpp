#include "graphdiff/datasets.hpp"

#include <stdexcept>

#include "graphdiff/graph_io.hpp"
#include "graphdiff/parallel.hpp"

namespace graphdiff {

namespace {

Graph block_model(const std::vector<int>& community, double p_intra, double p_inter, Rng& rng) {
  const int n = static_cast<int>(community.size());
  Graph g(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      g.set_pair_bit(k, bernoulli(rng, community[i] == community[j] ? p_intra : p_inter));
    }
  }
  return g;
}

std::vector<int> labels_from_sizes(const std::vector<int>& sizes) {
  std::vector<int> community;
  for (std::size_t c = 0; c < sizes.size(); ++c) community.insert(community.end(), sizes[c], static_cast<int>(c));
  return community;
}

}  // namespace

Graph gen_er(int n, double p, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_er: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_er: p must lie in [0, 1]");
  Graph g(n);
  for (std::size_t k = 0; k < g.pair_count(); ++k) g.set_pair_bit(k, bernoulli(rng, p));
  return g;
}

LabelledGraph gen_community_small_labelled(Rng& rng) {
  const int half = 6 + static_cast<int>(uniform_index(rng, 5));
  auto community = labels_from_sizes({half, half});
  auto g = block_model(community, kCommunityIntraP, kCommunityInterP, rng);
  return {std::move(g), std::move(community)};
}

Graph gen_community_small(Rng& rng) { return gen_community_small_labelled(rng).graph; }

LabelledGraph gen_sbm27_labelled(Rng& rng) {
  std::vector<int> sizes(3);
  int total = 0;
  do {
    total = 0;
    for (auto& s : sizes) {
      s = 7 + static_cast<int>(uniform_index(rng, 3));
      total += s;
    }
  } while (total < kSbmMinNodes || total > kSbmMaxNodes);
  auto community = labels_from_sizes(sizes);
  auto g = block_model(community, kSbmIntraP, kSbmInterP, rng);
  return {std::move(g), std::move(community)};
}

Graph gen_sbm27(Rng& rng) { return gen_sbm27_labelled(rng).graph; }

Graph gen_planar(int n, Rng& rng, std::vector<Point2>* points) {
  if (n < 3) throw std::invalid_argument("gen_planar: n must be >= 3");
  constexpr int kMaxAttempts = 100;
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (auto& p : pts) {
      p.x = uniform01(rng);
      p.y = uniform01(rng);
    }
    try {
      const auto tri = delaunay(pts);
      const auto h = static_cast<std::size_t>(tri.hull.size());
      if (tri.triangles.size() != 2 * static_cast<std::size_t>(n) - 2 - h) continue;
      auto g = triangulation_graph(tri, n);
      if (g.edge_count() != 3 * static_cast<std::size_t>(n) - 3 - h || !is_connected(g)) continue;
      if (points) *points = pts;
      return g;
    } catch (const DegeneratePointSet&) {
    }
  }
  throw std::runtime_error("gen_planar: no valid triangulation after repeated redraws");
}

Graph gen_planar60(Rng& rng) { return gen_planar(kPlanarNodes, rng); }

std::string_view to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::er: return "er";
    case DatasetKind::community_small: return "community-small";
    case DatasetKind::sbm27: return "sbm-27";
    case DatasetKind::planar60: return "planar-60";
    case DatasetKind::file: return "file";
  }
  return "?";
}

DatasetKind parse_dataset_kind(std::string_view name) {
  for (auto kind : {DatasetKind::er, DatasetKind::community_small, DatasetKind::sbm27, DatasetKind::planar60,
                    DatasetKind::file}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown dataset kind '" + std::string(name) +
                              "' (expected er, community-small, sbm-27, planar-60 or file)");
}

int default_count(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::community_small: return 100;
    case DatasetKind::sbm27:
    case DatasetKind::planar60: return 200;
    case DatasetKind::er: return 100;
    case DatasetKind::file: return 0;
  }
  return 0;
}

void DatasetSpec::validate() const {
  if (kind == DatasetKind::file) {
    if (path.empty()) throw std::invalid_argument("file dataset needs a path");
    return;
  }
  if (count < 1) throw std::invalid_argument("dataset count must be >= 1");
  if (kind == DatasetKind::er) {
    if (er_nodes < 1) throw std::invalid_argument("er: n must be >= 1");
    if (!(er_p >= 0.0 && er_p <= 1.0)) throw std::invalid_argument("er: p must lie in [0, 1]");
  }
}

GraphBatch gen_dataset(const DatasetSpec& spec, int threads) {
  spec.validate();
  if (spec.kind == DatasetKind::file) {
    auto batch = read_graphs(spec.path);
    if (batch.empty()) throw std::invalid_argument("dataset file '" + spec.path + "' holds no graphs");
    if (spec.count > 0 && static_cast<std::size_t>(spec.count) < batch.size()) batch.resize(spec.count);
    return batch;
  }
  GraphBatch out(static_cast<std::size_t>(spec.count));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    Rng rng = make_rng(spec.seed, "dataset", {static_cast<std::uint64_t>(i)});
    switch (spec.kind) {
      case DatasetKind::er: out[i] = gen_er(spec.er_nodes, spec.er_p, rng); break;
      case DatasetKind::community_small: out[i] = gen_community_small(rng); break;
      case DatasetKind::sbm27: out[i] = gen_sbm27(rng); break;
      case DatasetKind::planar60: out[i] = gen_planar60(rng); break;
      case DatasetKind::file: break;
    }
  });
  return out;
}

}  // namespace graphdiff
