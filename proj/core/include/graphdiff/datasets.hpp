#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphdiff/delaunay.hpp"
#include "graphdiff/graph.hpp"
#include "graphdiff/random.hpp"

namespace graphdiff {

inline constexpr double kCommunityIntraP = 0.7;
inline constexpr double kCommunityInterP = 0.05;
inline constexpr double kSbmIntraP = 0.85;
inline constexpr double kSbmInterP = 0.046875;
inline constexpr int kSbmMinNodes = 24;
inline constexpr int kSbmMaxNodes = 27;
inline constexpr int kPlanarNodes = 60;

/// Graph plus the community of each node.
struct LabelledGraph {
  Graph graph;
  std::vector<int> community;
};

Graph gen_er(int n, double p, Rng& rng);

/// n uniform on {12, 14, 16, 18, 20}; two halves, ER(0.7) inside, 0.05 across.
LabelledGraph gen_community_small_labelled(Rng& rng);
Graph gen_community_small(Rng& rng);

/// Three communities with sizes uniform on {7, 8, 9}, redrawn until the total is in [24, 27].
LabelledGraph gen_sbm27_labelled(Rng& rng);
Graph gen_sbm27(Rng& rng);

/// n points uniform on the unit square, Delaunay edges. Point sets the
/// triangulation rejects are redrawn.
Graph gen_planar(int n, Rng& rng, std::vector<Point2>* points = nullptr);
Graph gen_planar60(Rng& rng);

enum class DatasetKind { er, community_small, sbm27, planar60, file };

std::string_view to_string(DatasetKind kind) noexcept;
DatasetKind parse_dataset_kind(std::string_view name);

struct DatasetSpec {
  DatasetKind kind = DatasetKind::community_small;
  int count = 100;
  std::uint64_t seed = 0;
  int er_nodes = 20;
  double er_p = 0.5;
  /// Source of `file` datasets; count <= 0 keeps every graph in the file.
  std::string path;

  void validate() const;
};

/// The count used for each kind when none is given.
int default_count(DatasetKind kind) noexcept;

/// Graph i is drawn from the stream derive_seed(seed, "dataset", {i}), so the
/// batch does not depend on the thread count.
GraphBatch gen_dataset(const DatasetSpec& spec, int threads = 1);

}  // namespace graphdiff
