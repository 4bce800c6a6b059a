#include "graphdiff/sampling.hpp"

#include <stdexcept>
#include <string>

#include "graphdiff/diffusion.hpp"
#include "graphdiff/parallel.hpp"

namespace graphdiff {

std::string_view to_string(SamplerKind kind) noexcept { return kind == SamplerKind::vb ? "vb" : "simple"; }

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "vb") return SamplerKind::vb;
  if (name == "simple") return SamplerKind::simple;
  throw std::invalid_argument("unknown sampling algorithm '" + std::string(name) + "' (expected vb or simple)");
}

NodeCountPolicy::NodeCountPolicy(std::map<int, int> histogram) : histogram_(std::move(histogram)) {
  if (histogram_.empty()) throw std::invalid_argument("node count policy needs at least one node count");
  for (auto [n, count] : histogram_) {
    if (n < 1 || count < 1) throw std::invalid_argument("node count histogram entries must be positive");
    total_ += count;
  }
}

NodeCountPolicy NodeCountPolicy::fixed(int n) { return NodeCountPolicy(std::map<int, int>{{n, 1}}); }

NodeCountPolicy NodeCountPolicy::empirical(std::map<int, int> histogram) { return NodeCountPolicy(std::move(histogram)); }

NodeCountPolicy NodeCountPolicy::from_dataset(const GraphBatch& dataset) {
  return NodeCountPolicy(node_count_histogram(dataset));
}

int NodeCountPolicy::draw(Rng& rng) const {
  if (is_fixed()) return histogram_.begin()->first;
  auto pick = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(total_)));
  for (auto [n, count] : histogram_) {
    if (pick < count) return n;
    pick -= count;
  }
  return histogram_.rbegin()->first;
}

std::map<int, int> node_count_histogram(const GraphBatch& dataset) {
  std::map<int, int> histogram;
  for (const auto& g : dataset) ++histogram[g.node_count()];
  return histogram;
}

Graph sample_prior(int n, Rng& rng) {
  Graph g(n);
  for (std::size_t k = 0; k < g.pair_count(); ++k) g.set_pair_bit(k, bernoulli(rng, 0.5));
  return g;
}

Graph vb_step(const Denoiser& denoiser, const Graph& a_t, int t, Rng& rng) {
  const auto pred = denoiser.predict(a_t, t);
  const auto post = edge_posterior(denoiser.schedule(), t);
  Graph next(a_t.node_count());
  for (std::size_t k = 0; k < a_t.pair_count(); ++k) {
    const bool at = a_t.pair_bit(k);
    const double p = pred.probs[k];
    next.set_pair_bit(k, bernoulli(rng, p * post(at, true) + (1.0 - p) * post(at, false)));
  }
  return next;
}

Graph simple_step(const Denoiser& denoiser, const Graph& a_t, int t, Rng& rng) {
  const auto pred = denoiser.predict(a_t, t);
  const double flip = denoiser.schedule().beta_bar(t - 1);
  Graph next(a_t.node_count());
  for (std::size_t k = 0; k < a_t.pair_count(); ++k) {
    const bool clean = bernoulli(rng, pred.probs[k]);
    next.set_pair_bit(k, bernoulli(rng, flip) ? !clean : clean);
  }
  return next;
}

Graph final_step(const Denoiser& denoiser, const Graph& a_1, Rng& rng) {
  const auto pred = denoiser.predict(a_1, 1);
  Graph out(a_1.node_count());
  for (std::size_t k = 0; k < a_1.pair_count(); ++k) out.set_pair_bit(k, bernoulli(rng, pred.probs[k]));
  return out;
}

Graph reverse_chain(const Denoiser& denoiser, SamplerKind kind, int n, Rng& rng, GraphBatch* trajectory) {
  const int steps = denoiser.schedule().steps();
  Graph state = sample_prior(n, rng);
  for (int t = steps; t >= 2; --t) {
    if (trajectory) trajectory->push_back(state);
    state = kind == SamplerKind::vb ? vb_step(denoiser, state, t, rng) : simple_step(denoiser, state, t, rng);
  }
  if (trajectory) trajectory->push_back(state);
  return final_step(denoiser, state, rng);
}

GraphBatch sample_graphs(const Denoiser& denoiser, SamplerKind kind, const SampleConfig& config, GraphBatch* trajectory) {
  if (config.count < 1) throw std::invalid_argument("sample: count must be >= 1");
  if (config.steps && *config.steps != denoiser.schedule().steps()) {
    throw std::invalid_argument("sample: config asks for T=" + std::to_string(*config.steps) +
                                " but the denoiser was built for T=" + std::to_string(denoiser.schedule().steps()));
  }
  GraphBatch out(static_cast<std::size_t>(config.count));
  parallel_for(out.size(), config.threads, [&](std::size_t i) {
    Rng rng = make_rng(config.seed, "sample", {static_cast<std::uint64_t>(i)});
    const int n = config.node_counts.draw(rng);
    out[i] = reverse_chain(denoiser, kind, n, rng, i == 0 ? trajectory : nullptr);
  });
  return out;
}

}  // namespace graphdiff
