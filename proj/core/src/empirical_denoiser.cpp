#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "graphdiff/denoiser.hpp"

namespace graphdiff {

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

DenoiserOutput DenoiserOutput::from_logits(std::vector<double> logits) {
  DenoiserOutput out;
  out.probs.resize(logits.size());
  std::transform(logits.begin(), logits.end(), out.probs.begin(), sigmoid);
  out.logits = std::move(logits);
  return out;
}

DenoiserOutput DenoiserOutput::from_probs(std::vector<double> probs) {
  DenoiserOutput out;
  out.logits.resize(probs.size());
  std::transform(probs.begin(), probs.end(), out.logits.begin(), [](double p) { return std::log(p) - std::log1p(-p); });
  out.probs = std::move(probs);
  return out;
}

EmpiricalDenoiser::EmpiricalDenoiser(GraphBatch dataset, NoiseSchedule schedule)
    : dataset_(std::move(dataset)), schedule_(std::move(schedule)) {
  if (dataset_.empty()) throw std::invalid_argument("empirical denoiser needs a non-empty dataset");
  const int n = dataset_.front().node_count();
  for (const auto& g : dataset_) {
    if (g.node_count() != n) throw std::invalid_argument("empirical denoiser needs graphs of equal node count");
  }
}

DenoiserOutput EmpiricalDenoiser::predict(const Graph& a_t, int t) const {
  if (a_t.node_count() != node_count()) {
    throw std::invalid_argument("empirical denoiser: graph has n=" + std::to_string(a_t.node_count()) +
                                ", dataset has n=" + std::to_string(node_count()));
  }
  if (t < 1 || t > schedule_.steps()) throw std::out_of_range("empirical denoiser: t outside [1, T]");

  const double flip = schedule_.beta_bar(t);
  const double log_flip = std::log(flip);
  const double log_keep = std::log1p(-flip);
  const auto pairs = static_cast<double>(a_t.pair_count());

  std::vector<double> log_w(dataset_.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < dataset_.size(); ++g) {
    const auto d = static_cast<double>(dataset_[g].hamming_distance(a_t));
    // 0 * log(0) is 0 here: no disagreements means no flip factor at all.
    const double lw = (d > 0 ? d * log_flip : 0.0) + (pairs - d > 0 ? (pairs - d) * log_keep : 0.0);
    log_w[g] = lw;
    top = std::max(top, lw);
  }
  if (!std::isfinite(top)) {
    throw std::domain_error("empirical denoiser: a_t has zero likelihood under every dataset graph at t=" + std::to_string(t));
  }

  std::vector<double> mass(a_t.pair_count(), 0.0);
  double total = 0.0;
  for (std::size_t g = 0; g < dataset_.size(); ++g) {
    const double w = std::exp(log_w[g] - top);
    if (w == 0.0) continue;
    total += w;
    const auto& words = dataset_[g].words();
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      for (auto bits = words[wi]; bits; bits &= bits - 1) {
        mass[wi * 64 + static_cast<std::size_t>(std::countr_zero(bits))] += w;
      }
    }
  }
  for (auto& m : mass) m = std::clamp(m / total, 0.0, 1.0);
  return DenoiserOutput::from_probs(std::move(mass));
}

}  // namespace graphdiff
