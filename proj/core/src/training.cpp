#include "graphdiff/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "graphdiff/diffusion.hpp"
#include "graphdiff/errors.hpp"
#include "graphdiff/parallel.hpp"

namespace graphdiff {

std::string_view to_string(LossKind kind) noexcept { return kind == LossKind::vb ? "vb" : "simple"; }

LossKind parse_loss_kind(std::string_view name) {
  if (name == "vb") return LossKind::vb;
  if (name == "simple") return LossKind::simple;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "' (expected vb or simple)");
}

double bernoulli_kl(double q1, double p1) {
  if (!(q1 >= 0.0 && q1 <= 1.0) || !(p1 >= 0.0 && p1 <= 1.0)) {
    throw std::invalid_argument("bernoulli_kl: probabilities must lie in [0, 1]");
  }
  auto term = [](double q, double p) {
    if (q == 0.0) return 0.0;
    if (p == 0.0) throw NumericError("bernoulli_kl: overflow, model assigns zero probability to a reachable state");
    return q * std::log(q / p);
  };
  return term(q1, p1) + term(1.0 - q1, 1.0 - p1);
}

namespace {

void require_shapes(const Graph& g0, const Graph& a_t, const DenoiserOutput& pred) {
  if (a_t.node_count() != g0.node_count()) throw std::invalid_argument("loss: a_t and g0 differ in node count");
  if (pred.probs.size() != g0.pair_count() || pred.logits.size() != g0.pair_count()) {
    throw std::invalid_argument("loss: prediction length does not match the graph");
  }
}

void require_finite_loss(double value) {
  if (!std::isfinite(value)) throw NumericError("loss is not finite");
}

int draw_step(const NoiseSchedule& schedule, Rng& rng) {
  return 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(schedule.steps())));
}

// -log P(A_0 = a0) for one pair. Unclamped pairs use the logit, which keeps
// precision when the probability is within rounding of 0 or 1.
double pair_nll(const DenoiserOutput& pred, std::size_t k, bool a0) {
  const double p = pred.probs[k];
  const double pc = std::clamp(p, kLogClamp, 1.0 - kLogClamp);
  if (pc != p || pred.logits.empty()) return a0 ? -std::log(pc) : -std::log1p(-pc);
  const double z = a0 ? -pred.logits[k] : pred.logits[k];
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

LossValue vb_term(const NoiseSchedule& schedule, const Graph& g0, const Graph& a_t, int t, const DenoiserOutput& pred) {
  require_shapes(g0, a_t, pred);
  if (t < 1 || t > schedule.steps()) throw std::out_of_range("vb_term: t outside [1, T]");

  LossValue out;
  out.t = t;
  out.dlogits.assign(g0.pair_count(), 0.0);

  if (t == 1) {
    for (std::size_t k = 0; k < g0.pair_count(); ++k) {
      const double p = pred.probs[k];
      const double pc = std::clamp(p, kLogClamp, 1.0 - kLogClamp);
      const bool a0 = g0.pair_bit(k);
      out.value += pair_nll(pred, k, a0);
      if (pc == p) out.dlogits[k] = p - (a0 ? 1.0 : 0.0);
    }
    require_finite_loss(out.value);
    return out;
  }

  const auto post = edge_posterior(schedule, t);
  for (std::size_t k = 0; k < g0.pair_count(); ++k) {
    const bool at = a_t.pair_bit(k);
    const double q1 = post(at, g0.pair_bit(k));
    const double hi = post(at, true);
    const double lo = post(at, false);
    const double p = pred.probs[k];
    const double mixed = p * hi + (1.0 - p) * lo;
    const double p1 = std::clamp(mixed, kKlClamp, 1.0 - kKlClamp);
    out.value += bernoulli_kl(q1, p1);
    if (p1 == mixed) {
      const double d_p1 = -q1 / p1 + (1.0 - q1) / (1.0 - p1);
      out.dlogits[k] = d_p1 * (hi - lo) * p * (1.0 - p);
    }
  }
  require_finite_loss(out.value);
  return out;
}

double simple_weight(const NoiseSchedule& schedule, int t) {
  return 1.0 - 2.0 * schedule.beta_bar(t) + 1.0 / schedule.steps();
}

double cross_entropy(const Graph& g0, const DenoiserOutput& pred) {
  if (pred.probs.size() != g0.pair_count()) throw std::invalid_argument("cross_entropy: length mismatch");
  double ce = 0.0;
  for (std::size_t k = 0; k < g0.pair_count(); ++k) ce += pair_nll(pred, k, g0.pair_bit(k));
  return ce;
}

LossValue simple_term(const NoiseSchedule& schedule, const Graph& g0, int t, const DenoiserOutput& pred) {
  if (pred.probs.size() != g0.pair_count()) throw std::invalid_argument("simple_term: length mismatch");
  LossValue out;
  out.t = t;
  const double w = simple_weight(schedule, t);
  out.value = w * cross_entropy(g0, pred);
  require_finite_loss(out.value);
  out.dlogits.assign(g0.pair_count(), 0.0);
  for (std::size_t k = 0; k < g0.pair_count(); ++k) {
    const double p = pred.probs[k];
    if (std::clamp(p, kLogClamp, 1.0 - kLogClamp) == p) out.dlogits[k] = w * (p - (g0.pair_bit(k) ? 1.0 : 0.0));
  }
  return out;
}

double prior_kl(const NoiseSchedule& schedule, const Graph& g0) {
  const double bb = schedule.beta_bar(schedule.steps());
  const double per_edge = bernoulli_kl(1.0 - bb, 0.5);  // same value for a_0 = 0 and a_0 = 1 by symmetry
  return per_edge * static_cast<double>(g0.pair_count());
}

LossValue loss_vb(const Denoiser& denoiser, const Graph& g0, Rng& rng) {
  const auto& schedule = denoiser.schedule();
  if (schedule.steps() < 2) throw std::invalid_argument("loss_vb needs T >= 2");
  const int t = draw_step(schedule, rng);
  const Graph a_t = noise_graph(g0, schedule, t, rng);
  LossValue out = vb_term(schedule, g0, a_t, t, denoiser.predict(a_t, t));
  const double scale = static_cast<double>(schedule.steps());
  out.value *= scale;
  for (auto& g : out.dlogits) g *= scale;
  out.prior_term = prior_kl(schedule, g0);
  out.value += out.prior_term;
  return out;
}

LossValue loss_simple(const Denoiser& denoiser, const Graph& g0, Rng& rng) {
  const auto& schedule = denoiser.schedule();
  const int t = draw_step(schedule, rng);
  const Graph a_t = noise_graph(g0, schedule, t, rng);
  return simple_term(schedule, g0, t, denoiser.predict(a_t, t));
}

void TrainConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("train: steps must be >= 1");
  if (loss == LossKind::vb && steps < 2) throw std::invalid_argument("train: the variational loss needs steps >= 2");
  if (epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
  if (batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("train: moment coefficients must lie in [0, 1)");
  }
  if (!(lr_decay > 0.0)) throw std::invalid_argument("train: lr decay must be > 0");
  if (checkpoint_every < 0) throw std::invalid_argument("train: checkpoint interval must be >= 0");
}

TrainState initial_train_state(const TrainConfig& config) {
  Rng rng = make_rng(config.seed, "init");
  return TrainState(MiniPpgnParams::initialized(config.model, rng));
}

namespace {

struct SlotResult {
  double loss = 0.0;
  int t = 0;
  std::vector<double> grad;
};

SlotResult evaluate_slot(const TrainConfig& config, const NoiseSchedule& schedule, const MiniPpgnParams& params,
                         const Graph& g0, Rng& rng) {
  SlotResult r;
  r.t = draw_step(schedule, rng);
  const Graph a_t = noise_graph(g0, schedule, r.t, rng);
  MiniPpgnTracePtr trace;
  const auto pred = mini_ppgn_forward(params, a_t, schedule.beta_bar(r.t), &trace);
  LossValue loss;
  if (config.loss == LossKind::vb) {
    loss = vb_term(schedule, g0, a_t, r.t, pred);
    const double scale = static_cast<double>(schedule.steps());
    loss.value = loss.value * scale + prior_kl(schedule, g0);
    for (auto& g : loss.dlogits) g *= scale;
  } else {
    loss = simple_term(schedule, g0, r.t, pred);
  }
  r.loss = loss.value;
  r.grad = mini_ppgn_backward(params, *trace, loss.dlogits);
  return r;
}

void adam_update(const TrainConfig& config, TrainState& state, std::span<const double> grad, double lr) {
  ++state.step;
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  auto params = state.params.values();
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.moment1[i] = b1 * state.moment1[i] + (1.0 - b1) * grad[i];
    state.moment2[i] = b2 * state.moment2[i] + (1.0 - b2) * grad[i] * grad[i];
    const double m_hat = state.moment1[i] / c1;
    const double v_hat = state.moment2[i] / c2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
  }
}

}  // namespace

TrainResult train(const TrainConfig& config, const GraphBatch& dataset, TrainState state, const TrainHooks& hooks) {
  config.validate();
  if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
  if (!(state.params.config() == config.model)) throw std::invalid_argument("train: state does not match the model config");
  if (state.moment1.size() != state.params.size() || state.moment2.size() != state.params.size()) {
    throw std::invalid_argument("train: optimizer moments do not match the parameters");
  }

  const NoiseSchedule schedule = NoiseSchedule::make(config.schedule, config.steps);
  TrainResult result{state, state, {}, {}, false, {}};

  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  std::vector<std::size_t> order(dataset.size());

  for (int epoch = state.epoch; epoch < config.epochs; ++epoch) {
    const TrainState epoch_start = state;
    const double lr = config.learning_rate * std::pow(config.lr_decay, static_cast<double>(epoch));

    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng = make_rng(config.seed, "shuffle", {static_cast<std::uint64_t>(epoch)});
    shuffle(std::span<std::size_t>(order), shuffle_rng);

    double epoch_loss = 0.0;
    std::size_t epoch_items = 0;
    bool failed = false;

    for (std::size_t start = 0; start < order.size() && !failed; start += batch) {
      const std::size_t size = std::min(batch, order.size() - start);
      std::vector<SlotResult> slots(size);
      const std::uint64_t step = state.step;
      try {
        parallel_for(size, config.threads, [&](std::size_t s) {
          Rng rng = make_rng(config.seed, "noise", {step, static_cast<std::uint64_t>(s)});
          slots[s] = evaluate_slot(config, schedule, state.params, dataset[order[start + s]], rng);
        });
      } catch (const NumericError& e) {
        result.message = "epoch " + std::to_string(epoch) + ": " + e.what();
        failed = true;
        break;
      }

      std::vector<double> grad(state.params.size(), 0.0);
      double loss = 0.0;
      double t_sum = 0.0;
      for (const auto& slot : slots) {
        loss += slot.loss;
        t_sum += slot.t;
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += slot.grad[i];
      }
      const double inv = 1.0 / static_cast<double>(size);
      loss *= inv;
      for (auto& g : grad) g *= inv;

      if (!std::isfinite(loss) || loss > config.divergence_threshold) {
        result.message = "epoch " + std::to_string(epoch) + ": loss diverged (" + std::to_string(loss) + ")";
        failed = true;
        break;
      }

      adam_update(config, state, grad, lr);
      TraceRow row{epoch, state.step, loss, t_sum * inv};
      result.trace.push_back(row);
      if (hooks.on_step) hooks.on_step(row);
      epoch_loss += loss * static_cast<double>(size);
      epoch_items += size;
    }

    if (failed) {
      result.diverged = true;
      result.last = epoch_start;
      return result;
    }

    epoch_loss /= static_cast<double>(epoch_items);
    result.epoch_losses.push_back(epoch_loss);
    state.epoch = epoch + 1;
    if (epoch_loss < state.best_loss) {
      state.best_loss = epoch_loss;
      result.best = state;
      if (hooks.on_best) hooks.on_best(state);
    }
    if (config.checkpoint_every > 0 && state.epoch % config.checkpoint_every == 0 && hooks.on_checkpoint) {
      hooks.on_checkpoint(state);
    }
  }

  result.last = std::move(state);
  return result;
}

TrainResult train(const TrainConfig& config, const GraphBatch& dataset) {
  return train(config, dataset, initial_train_state(config));
}

std::string format_trace_csv(const std::vector<TraceRow>& rows, bool header) {
  std::ostringstream out;
  out.precision(17);
  if (header) out << "epoch,step,loss,t_mean\n";
  for (const auto& r : rows) out << r.epoch << ',' << r.step << ',' << r.loss << ',' << r.t_mean << '\n';
  return out.str();
}

}  // namespace graphdiff
