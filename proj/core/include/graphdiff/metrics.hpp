#pragma once

#include <string_view>
#include <vector>

#include "graphdiff/graph.hpp"

namespace graphdiff {

enum class StatKind { degree_hist, clustering_hist, orbit_counts };
enum class KernelKind { gaussian_emd, gaussian_tv };

std::string_view to_string(StatKind kind) noexcept;
std::string_view to_string(KernelKind kind) noexcept;
KernelKind parse_kernel_kind(std::string_view name);

struct StatVector {
  StatKind kind = StatKind::degree_hist;
  std::vector<double> values;
};

/// c_i = 2 tri(i) / (deg_i (deg_i - 1)), 0 when deg_i < 2.
std::vector<double> clustering_coefficients(const Graph& g);

/// Fraction of nodes with degree 0, 1, ..., max degree.
StatVector degree_histogram(const Graph& g);

/// Clustering coefficients binned on [0, 1]; value c goes to bin min(floor(c * bins), bins - 1).
StatVector clustering_histogram(const Graph& g, int bins = 100);

/// Per-graph mean of the per-node orbit counts.
StatVector orbit_statistic(const Graph& g);

struct KernelSpec {
  KernelKind kind = KernelKind::gaussian_emd;
  double sigma = 1.0;
  /// Ground distance between adjacent bins for gaussian-emd.
  double bin_width = 1.0;
};

/// 1-D earth mover's distance between two histograms of equal mass on bins
/// spaced bin_width apart; the shorter vector is zero-padded.
double emd_1d(const std::vector<double>& a, const std::vector<double>& b, double bin_width);

/// Half the L1 distance, after zero-padding.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

/// exp(-d^2 / (2 sigma^2)) with d the kernel's distance.
double kernel_value(const StatVector& a, const StatVector& b, const KernelSpec& kernel);

/// Biased MMD^2: mean k(a, a') + mean k(b, b') - 2 mean k(a, b), diagonals
/// included, clipped at 0. Throws std::invalid_argument on an empty set or mixed kinds.
double mmd(const std::vector<StatVector>& set_a, const std::vector<StatVector>& set_b, const KernelSpec& kernel,
           int threads = 1);

struct MetricConfig {
  KernelSpec degree{KernelKind::gaussian_emd, 1.0, 1.0};
  KernelSpec clustering{KernelKind::gaussian_emd, 1.0, 0.01};
  KernelSpec orbit{KernelKind::gaussian_tv, 1.0, 1.0};
  int clustering_bins = 100;
  int threads = 1;
};

struct MMDReport {
  double degree = 0.0;
  double clustering = 0.0;
  double orbit = 0.0;
  double avg = 0.0;
};

MMDReport evaluate(const GraphBatch& generated, const GraphBatch& reference, const MetricConfig& config = {});

}  // namespace graphdiff
