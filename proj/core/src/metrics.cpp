#include "graphdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "graphdiff/orbits.hpp"
#include "graphdiff/parallel.hpp"

namespace graphdiff {

std::string_view to_string(StatKind kind) noexcept {
  switch (kind) {
    case StatKind::degree_hist: return "degree-hist";
    case StatKind::clustering_hist: return "clustering-hist";
    case StatKind::orbit_counts: return "orbit-counts";
  }
  return "?";
}

std::string_view to_string(KernelKind kind) noexcept {
  return kind == KernelKind::gaussian_emd ? "gaussian-emd" : "gaussian-tv";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gaussian-emd") return KernelKind::gaussian_emd;
  if (name == "gaussian-tv") return KernelKind::gaussian_tv;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "' (expected gaussian-emd or gaussian-tv)");
}

std::vector<double> clustering_coefficients(const Graph& g) {
  const auto nbrs = g.adjacency_lists();
  std::vector<double> c(nbrs.size(), 0.0);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const auto& ni = nbrs[i];
    const auto d = ni.size();
    if (d < 2) continue;
    std::size_t tri = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) tri += g.has_edge(ni[a], ni[b]) ? 1 : 0;
    }
    c[i] = 2.0 * static_cast<double>(tri) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return c;
}

StatVector degree_histogram(const Graph& g) {
  const auto degrees = degree_sequence(g);
  const int max_deg = *std::max_element(degrees.begin(), degrees.end());
  StatVector out{StatKind::degree_hist, std::vector<double>(static_cast<std::size_t>(max_deg) + 1, 0.0)};
  for (int d : degrees) out.values[d] += 1.0;
  for (auto& v : out.values) v /= static_cast<double>(degrees.size());
  return out;
}

StatVector clustering_histogram(const Graph& g, int bins) {
  if (bins < 1) throw std::invalid_argument("clustering histogram needs at least one bin");
  const auto coeffs = clustering_coefficients(g);
  StatVector out{StatKind::clustering_hist, std::vector<double>(static_cast<std::size_t>(bins), 0.0)};
  for (double c : coeffs) {
    const int bin = std::min(static_cast<int>(std::floor(c * bins)), bins - 1);
    out.values[bin] += 1.0;
  }
  for (auto& v : out.values) v /= static_cast<double>(coeffs.size());
  return out;
}

StatVector orbit_statistic(const Graph& g) { return {StatKind::orbit_counts, orbit_mean_vector(g)}; }

double emd_1d(const std::vector<double>& a, const std::vector<double>& b, double bin_width) {
  const auto len = std::max(a.size(), b.size());
  double cum = 0.0, total = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    cum += (k < a.size() ? a[k] : 0.0) - (k < b.size() ? b[k] : 0.0);
    total += std::abs(cum);
  }
  return total * bin_width;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  const auto len = std::max(a.size(), b.size());
  double total = 0.0;
  for (std::size_t k = 0; k < len; ++k) total += std::abs((k < a.size() ? a[k] : 0.0) - (k < b.size() ? b[k] : 0.0));
  return 0.5 * total;
}

double kernel_value(const StatVector& a, const StatVector& b, const KernelSpec& kernel) {
  const double d = kernel.kind == KernelKind::gaussian_emd ? emd_1d(a.values, b.values, kernel.bin_width)
                                                           : total_variation(a.values, b.values);
  return std::exp(-d * d / (2.0 * kernel.sigma * kernel.sigma));
}

namespace {

// Mean of k over all ordered pairs; row sums are reduced in index order.
double mean_kernel(const std::vector<StatVector>& xs, const std::vector<StatVector>& ys, const KernelSpec& kernel,
                   int threads) {
  std::vector<double> rows(xs.size(), 0.0);
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    double s = 0.0;
    for (const auto& y : ys) s += kernel_value(xs[i], y, kernel);
    rows[i] = s;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

}  // namespace

double mmd(const std::vector<StatVector>& set_a, const std::vector<StatVector>& set_b, const KernelSpec& kernel,
           int threads) {
  if (set_a.empty() || set_b.empty()) throw std::invalid_argument("mmd: both sets must be non-empty");
  if (!(kernel.sigma > 0.0)) throw std::invalid_argument("mmd: kernel bandwidth must be positive");
  const StatKind kind = set_a.front().kind;
  auto mismatched = [kind](const StatVector& s) { return s.kind != kind; };
  if (std::any_of(set_a.begin(), set_a.end(), mismatched) || std::any_of(set_b.begin(), set_b.end(), mismatched)) {
    throw std::invalid_argument("mmd: statistic kinds differ between vectors");
  }
  const double value = mean_kernel(set_a, set_a, kernel, threads) + mean_kernel(set_b, set_b, kernel, threads) -
                       2.0 * mean_kernel(set_a, set_b, kernel, threads);
  return std::max(value, 0.0);
}

MMDReport evaluate(const GraphBatch& generated, const GraphBatch& reference, const MetricConfig& config) {
  if (generated.empty() || reference.empty()) throw std::invalid_argument("evaluate: both graph sets must be non-empty");
  struct Stats {
    std::vector<StatVector> degree, clustering, orbit;
  };
  auto compute = [&](const GraphBatch& batch) {
    Stats s{std::vector<StatVector>(batch.size()), std::vector<StatVector>(batch.size()),
            std::vector<StatVector>(batch.size())};
    parallel_for(batch.size(), config.threads, [&](std::size_t i) {
      s.degree[i] = degree_histogram(batch[i]);
      s.clustering[i] = clustering_histogram(batch[i], config.clustering_bins);
      s.orbit[i] = orbit_statistic(batch[i]);
    });
    return s;
  };
  const Stats gen = compute(generated);
  const Stats ref = compute(reference);
  MMDReport report;
  report.degree = mmd(gen.degree, ref.degree, config.degree, config.threads);
  report.clustering = mmd(gen.clustering, ref.clustering, config.clustering, config.threads);
  report.orbit = mmd(gen.orbit, ref.orbit, config.orbit, config.threads);
  report.avg = (report.degree + report.clustering + report.orbit) / 3.0;
  return report;
}

}  // namespace graphdiff
