#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "graphdiff/denoiser.hpp"
#include "graphdiff/random.hpp"

namespace graphdiff {

enum class SamplerKind { vb, simple };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler_kind(std::string_view name);

/// How many nodes each generated graph gets: a fixed n, or a draw from the
/// node-count histogram of a training set.
class NodeCountPolicy {
 public:
  static NodeCountPolicy fixed(int n);
  static NodeCountPolicy empirical(std::map<int, int> histogram);
  static NodeCountPolicy from_dataset(const GraphBatch& dataset);

  int draw(Rng& rng) const;
  bool is_fixed() const noexcept { return histogram_.size() == 1; }
  const std::map<int, int>& histogram() const noexcept { return histogram_; }

 private:
  explicit NodeCountPolicy(std::map<int, int> histogram);

  std::map<int, int> histogram_;
  int total_ = 0;
};

std::map<int, int> node_count_histogram(const GraphBatch& dataset);

struct SampleConfig {
  int count = 1;
  NodeCountPolicy node_counts = NodeCountPolicy::fixed(1);
  /// When set, must match the denoiser's schedule length.
  std::optional<int> steps;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Each pair present independently with probability 1/2.
Graph sample_prior(int n, Rng& rng);

/// One step of the variational-loss sampler for t >= 2: per pair, A_{t-1} ~ reverse_marginal(t, a_t, p_hat).
Graph vb_step(const Denoiser& denoiser, const Graph& a_t, int t, Rng& rng);

/// One step of the simple-loss sampler for t >= 2: draw A~_0 ~ p_hat, then flip each pair of it with beta_bar_{t-1}.
Graph simple_step(const Denoiser& denoiser, const Graph& a_t, int t, Rng& rng);

/// Draws every pair of A_0 from the prediction at t = 1.
Graph final_step(const Denoiser& denoiser, const Graph& a_1, Rng& rng);

/// Full reverse chain from a prior draw on n nodes. If `trajectory` is given it
/// receives A_T, ..., A_1.
Graph reverse_chain(const Denoiser& denoiser, SamplerKind kind, int n, Rng& rng, GraphBatch* trajectory = nullptr);

/// `count` independent chains; graph i uses the stream derive_seed(seed, "sample", {i})
/// for its node count and every draw. `trajectory` receives the states of graph 0.
GraphBatch sample_graphs(const Denoiser& denoiser, SamplerKind kind, const SampleConfig& config,
                         GraphBatch* trajectory = nullptr);

inline GraphBatch sample_vb(const Denoiser& denoiser, const SampleConfig& config, GraphBatch* trajectory = nullptr) {
  return sample_graphs(denoiser, SamplerKind::vb, config, trajectory);
}
inline GraphBatch sample_simple(const Denoiser& denoiser, const SampleConfig& config,
                                GraphBatch* trajectory = nullptr) {
  return sample_graphs(denoiser, SamplerKind::simple, config, trajectory);
}

}  // namespace graphdiff
