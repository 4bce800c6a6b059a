#pragma once

#include "graphdiff/graph.hpp"
#include "graphdiff/random.hpp"
#include "graphdiff/schedule.hpp"

namespace graphdiff {

// The forward chain acts independently on every pair {i, j}: one step keeps the
// pair's state with probability 1 - beta_t and flips it with probability beta_t.
// After t steps from A_0 the pair has flipped with probability beta_bar_t.

/// beta_t, the single-step flip probability, 1 <= t <= T.
double forward_flip_prob(const NoiseSchedule& schedule, int t);

/// q(a_t | a_{t-1}) for one pair.
double step_transition(const NoiseSchedule& schedule, int t, bool a_prev, bool a_next);

/// q(a_t | a_0) for one pair, 0 <= t <= T.
double marginal_transition(const NoiseSchedule& schedule, int t, bool a_0, bool a_t);

/// Independently flips every pair of g with probability p.
Graph flip_pairs(const Graph& g, double p, Rng& rng);

/// Samples A_t ~ q(A_t | A_0 = g): every pair flipped with probability beta_bar_t.
Graph noise_graph(const Graph& g, const NoiseSchedule& schedule, int t, Rng& rng);

/// P(A_{t-1} = 1 | A_t = a_t, A_0 = a_0) for one pair, 2 <= t <= T.
double posterior(const NoiseSchedule& schedule, int t, bool a_t, bool a_0);

/// All four posterior cases of one step, indexed [a_t][a_0].
struct EdgePosterior {
  double p_one[2][2];

  double operator()(bool a_t, bool a_0) const noexcept { return p_one[a_t][a_0]; }
};

EdgePosterior edge_posterior(const NoiseSchedule& schedule, int t);

/// P(A_{t-1} = 1 | a_t) when A_0 = 1 with probability p0:
/// p0 * posterior(t, a_t, 1) + (1 - p0) * posterior(t, a_t, 0).
double reverse_marginal(const NoiseSchedule& schedule, int t, bool a_t, double p0);

}  // namespace graphdiff
