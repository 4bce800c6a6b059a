#pragma once

#include <vector>

#include "graphdiff/graph.hpp"
#include "graphdiff/schedule.hpp"

namespace graphdiff {

/// Per-pair prediction of p(A_0^{ij} = 1 | A_t, t), in edge_index order.
/// probs == sigmoid(logits); exact 0/1 probabilities carry infinite logits.
struct DenoiserOutput {
  std::vector<double> logits;
  std::vector<double> probs;

  static DenoiserOutput from_logits(std::vector<double> logits);
  static DenoiserOutput from_probs(std::vector<double> probs);
};

double sigmoid(double x) noexcept;

/// Anything that predicts clean edges from a noisy graph at step t.
/// Implementations must be safe to call concurrently through a const reference.
class Denoiser {
 public:
  virtual ~Denoiser() = default;

  virtual const NoiseSchedule& schedule() const = 0;
  virtual DenoiserOutput predict(const Graph& a_t, int t) const = 0;
};

/// Exact posterior over a finite training set.
///
/// With a uniform prior over the dataset graphs (duplicates counted), the
/// posterior weight of g given a_t is proportional to
/// beta_bar_t^{d(g, a_t)} (1 - beta_bar_t)^{P - d(g, a_t)}, d the Hamming
/// distance; the prediction is the weighted edge frequency.
class EmpiricalDenoiser final : public Denoiser {
 public:
  EmpiricalDenoiser(GraphBatch dataset, NoiseSchedule schedule);

  const NoiseSchedule& schedule() const override { return schedule_; }
  DenoiserOutput predict(const Graph& a_t, int t) const override;

  const GraphBatch& dataset() const noexcept { return dataset_; }
  int node_count() const noexcept { return dataset_.front().node_count(); }

 private:
  GraphBatch dataset_;
  NoiseSchedule schedule_;
};

inline DenoiserOutput empirical_denoise(const EmpiricalDenoiser& d, const Graph& a_t, int t) { return d.predict(a_t, t); }

}  // namespace graphdiff
