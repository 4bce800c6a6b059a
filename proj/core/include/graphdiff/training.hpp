#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "graphdiff/denoiser.hpp"
#include "graphdiff/mini_ppgn.hpp"
#include "graphdiff/random.hpp"
#include "graphdiff/schedule.hpp"

namespace graphdiff {

enum class LossKind { vb, simple };

std::string_view to_string(LossKind kind) noexcept;
LossKind parse_loss_kind(std::string_view name);

inline constexpr double kLogClamp = 1e-12;  // probabilities fed to log() in cross-entropies
inline constexpr double kKlClamp = 1e-6;    // model probabilities in KL denominators

/// KL(Ber(q1) || Ber(p1)) in nats with 0 * log 0 = 0.
/// Throws NumericError when p1 is 0 or 1 and q1 puts mass where p1 has none.
double bernoulli_kl(double q1, double p1);

/// Loss value plus its gradient with respect to the denoiser logits.
struct LossValue {
  double value = 0.0;
  int t = 0;
  std::vector<double> dlogits;
  /// KL(q(A_T | A_0) || Bernoulli(1/2)) summed over pairs; included in `value`
  /// for the variational loss but carries no gradient.
  double prior_term = 0.0;
};

/// One term of the variational bound at fixed (t, a_t), unscaled:
/// t >= 2: sum over pairs of KL(q(a_{t-1} | a_t, a_0) || p(a_{t-1} | a_t)),
/// with p(a_{t-1} | a_t) mixed from the prediction via reverse_marginal;
/// t == 1: -log p(A_0 | A_1) under the prediction.
LossValue vb_term(const NoiseSchedule& schedule, const Graph& g0, const Graph& a_t, int t, const DenoiserOutput& pred);

/// Weight of the cross-entropy at step t: 1 - 2 beta_bar_t + 1/T.
double simple_weight(const NoiseSchedule& schedule, int t);

/// Binary cross-entropy of the prediction against g0, summed over pairs.
double cross_entropy(const Graph& g0, const DenoiserOutput& pred);

/// simple_weight(t) * cross_entropy(g0, pred) and its logit gradient.
LossValue simple_term(const NoiseSchedule& schedule, const Graph& g0, int t, const DenoiserOutput& pred);

/// KL between the chain's end state q(A_T | g0) and the Bernoulli(1/2) prior.
double prior_kl(const NoiseSchedule& schedule, const Graph& g0);

/// Single-sample estimate of the variational bound: t ~ U{1..T}, a_t ~ q(. | g0),
/// value T * vb_term(t) + prior_kl. Requires T >= 2.
LossValue loss_vb(const Denoiser& denoiser, const Graph& g0, Rng& rng);

/// t ~ U{1..T}, a_t ~ q(. | g0), value simple_term(t).
LossValue loss_simple(const Denoiser& denoiser, const Graph& g0, Rng& rng);

struct TrainConfig {
  LossKind loss = LossKind::simple;
  ScheduleKind schedule = ScheduleKind::linear;
  int steps = 32;
  MiniPpgnConfig model{};
  int epochs = 100;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  /// Learning rate multiplier applied once per completed epoch.
  double lr_decay = 0.999;
  std::uint64_t seed = 0;
  /// Call on_checkpoint every this many epochs; 0 disables.
  int checkpoint_every = 0;
  double divergence_threshold = 1e6;
  int threads = 1;

  void validate() const;
};

/// Everything needed to continue a run bit-exactly. Random streams are derived
/// from (seed, epoch, step), so no generator state is stored.
struct TrainState {
  MiniPpgnParams params;
  std::vector<double> moment1;
  std::vector<double> moment2;
  std::uint64_t step = 0;
  int epoch = 0;
  double best_loss = std::numeric_limits<double>::infinity();

  explicit TrainState(MiniPpgnParams p)
      : params(std::move(p)), moment1(params.size(), 0.0), moment2(params.size(), 0.0) {}
};

/// Fresh state with parameters drawn from the config seed.
TrainState initial_train_state(const TrainConfig& config);

struct TraceRow {
  int epoch = 0;
  std::uint64_t step = 0;
  double loss = 0.0;
  double t_mean = 0.0;
};

struct TrainHooks {
  std::function<void(const TraceRow&)> on_step;
  /// Every checkpoint_every epochs, after the epoch completes.
  std::function<void(const TrainState&)> on_checkpoint;
  /// Whenever an epoch's mean loss improves on the best so far.
  std::function<void(const TrainState&)> on_best;
};

struct TrainResult {
  TrainState last;
  TrainState best;
  std::vector<TraceRow> trace;
  std::vector<double> epoch_losses;
  bool diverged = false;
  std::string message;
};

/// Minibatch Adam over shuffled epochs, continuing from `state` until
/// config.epochs epochs are complete. On divergence (non-finite loss or loss
/// above the threshold) training stops and `last` is the state after the
/// last completed epoch.
TrainResult train(const TrainConfig& config, const GraphBatch& dataset, TrainState state, const TrainHooks& hooks = {});
TrainResult train(const TrainConfig& config, const GraphBatch& dataset);

/// CSV with header `epoch,step,loss,t_mean`.
std::string format_trace_csv(const std::vector<TraceRow>& rows, bool header = true);

}  // namespace graphdiff
