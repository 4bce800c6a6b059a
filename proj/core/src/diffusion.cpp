#include "graphdiff/diffusion.hpp"

#include <stdexcept>
#include <string>

namespace graphdiff {

namespace {

void require_reverse_step(const NoiseSchedule& schedule, int t) {
  if (t < 2 || t > schedule.steps()) {
    throw std::out_of_range("posterior needs 2 <= t <= T, got t=" + std::to_string(t));
  }
}

}  // namespace

double forward_flip_prob(const NoiseSchedule& schedule, int t) { return schedule.beta(t); }

double step_transition(const NoiseSchedule& schedule, int t, bool a_prev, bool a_next) {
  const double b = schedule.beta(t);
  return a_prev == a_next ? 1.0 - b : b;
}

double marginal_transition(const NoiseSchedule& schedule, int t, bool a_0, bool a_t) {
  const double bb = schedule.beta_bar(t);
  return a_0 == a_t ? 1.0 - bb : bb;
}

Graph flip_pairs(const Graph& g, double p, Rng& rng) {
  Graph out = g;
  if (p <= 0.0) return out;
  for (std::size_t k = 0; k < out.pair_count(); ++k) {
    if (bernoulli(rng, p)) out.flip_pair_bit(k);
  }
  return out;
}

Graph noise_graph(const Graph& g, const NoiseSchedule& schedule, int t, Rng& rng) {
  return flip_pairs(g, schedule.beta_bar(t), rng);
}

EdgePosterior edge_posterior(const NoiseSchedule& schedule, int t) {
  require_reverse_step(schedule, t);
  const double b = schedule.beta(t);
  const double prev = schedule.beta_bar(t - 1);
  const double cur = schedule.beta_bar(t);

  EdgePosterior post{};
  post.p_one[1][1] = (1.0 - b) * (1.0 - prev) / (1.0 - cur);
  post.p_one[0][0] = b * prev / (1.0 - cur);
  if (cur > 0.0) {
    post.p_one[1][0] = (1.0 - b) * prev / cur;
    post.p_one[0][1] = b * (1.0 - prev) / cur;
  } else {
    // beta_bar_t = 0: a_t != a_0 cannot occur. Use the a_t == a_0 limits so
    // callers mixing over a_0 still get finite values.
    post.p_one[1][0] = 1.0;
    post.p_one[0][1] = 0.0;
  }
  return post;
}

double posterior(const NoiseSchedule& schedule, int t, bool a_t, bool a_0) {
  return edge_posterior(schedule, t)(a_t, a_0);
}

double reverse_marginal(const NoiseSchedule& schedule, int t, bool a_t, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("reverse_marginal: p0 outside [0, 1]");
  const auto post = edge_posterior(schedule, t);
  return p0 * post(a_t, true) + (1.0 - p0) * post(a_t, false);
}

}  // namespace graphdiff
