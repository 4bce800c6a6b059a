#include <gtest/gtest.h>

#include <cmath>

#include "graphdiff/diffusion.hpp"
#include "oracles.hpp"

namespace graphdiff {
namespace {

// beta_t = 0.1 between beta_bar_{t-1} = 0.2 and beta_bar_t = 0.26.
NoiseSchedule example_schedule() { return NoiseSchedule::from_beta_bar({0.0, 0.2, 0.26, 0.5}); }

TEST(Posterior, WorkedExamples) {
  const auto s = example_schedule();
  EXPECT_NEAR(s.beta(2), 0.1, 1e-12);
  EXPECT_NEAR(posterior(s, 2, true, true), 0.9 * 0.8 / 0.74, 1e-12);
  EXPECT_NEAR(posterior(s, 2, true, false), 0.9 * 0.2 / 0.26, 1e-12);
  EXPECT_NEAR(posterior(s, 2, false, true), 0.1 * 0.8 / 0.26, 1e-12);
  EXPECT_NEAR(posterior(s, 2, false, false), 0.1 * 0.2 / 0.74, 1e-12);
  EXPECT_NEAR(posterior(s, 2, true, true), 0.972973, 1e-6);
  EXPECT_NEAR(posterior(s, 2, true, false), 0.692308, 1e-6);
  EXPECT_NEAR(posterior(s, 2, false, false), 0.027027, 1e-6);
}

TEST(Posterior, EqualsBayesQuotient) {
  for (int steps : {2, 8, 32}) {
    const auto s = NoiseSchedule::linear(steps);
    const auto bb = oracle::linear_beta_bar(steps);
    const auto beta = oracle::step_flips(bb);
    for (int t = 2; t <= steps; ++t) {
      const auto post = edge_posterior(s, t);
      for (int a_t = 0; a_t < 2; ++a_t) {
        for (int a_0 = 0; a_0 < 2; ++a_0) {
          const double expected = oracle::to_double(oracle::bayes_posterior(bb, beta, t, a_t, a_0));
          EXPECT_NEAR(posterior(s, t, a_t, a_0), expected, 1e-12) << "T=" << steps << " t=" << t;
          EXPECT_EQ(post(a_t, a_0), posterior(s, t, a_t, a_0));
        }
      }
    }
  }
}

TEST(Posterior, NormalizationAndRange) {
  const auto s = NoiseSchedule::cosine(32);
  for (int t = 2; t <= 32; ++t) {
    for (int a_t = 0; a_t < 2; ++a_t) {
      for (int a_0 = 0; a_0 < 2; ++a_0) {
        const double one = posterior(s, t, a_t, a_0);
        EXPECT_GE(one, 0.0);
        EXPECT_LE(one, 1.0);
        // P(A_{t-1} = 0 | .) computed independently from the same quotient.
        const double zero = step_transition(s, t, false, a_t) * marginal_transition(s, t - 1, a_0, false) /
                            marginal_transition(s, t, a_0, a_t);
        EXPECT_NEAR(one + zero, 1.0, 1e-12);
      }
    }
  }
}

TEST(Posterior, ReconstructsPreviousMarginal) {
  const auto s = NoiseSchedule::linear(32);
  for (int t = 2; t <= 32; ++t) {
    for (int a_0 = 0; a_0 < 2; ++a_0) {
      double one = 0.0;
      for (int a_t = 0; a_t < 2; ++a_t) one += marginal_transition(s, t, a_0, a_t) * posterior(s, t, a_t, a_0);
      EXPECT_NEAR(one, marginal_transition(s, t - 1, a_0, true), 1e-12);
    }
  }
}

TEST(Posterior, RejectsStepOne) {
  const auto s = NoiseSchedule::linear(8);
  EXPECT_THROW(posterior(s, 1, true, true), std::out_of_range);
  EXPECT_THROW(posterior(s, 9, true, true), std::out_of_range);
}

TEST(ChapmanKolmogorov, ExactOnTwoStateChain) {
  const int steps = 32;
  const auto bb = oracle::linear_beta_bar(steps);
  const auto beta = oracle::step_flips(bb);
  for (int t = 1; t <= steps; ++t) {
    const auto step = oracle::flip_matrix(beta[t - 1]);
    const auto prev = oracle::flip_matrix(bb[t - 1]);
    const auto cur = oracle::flip_matrix(bb[t]);
    EXPECT_EQ(oracle::matmul(prev, step), cur) << "t=" << t;
  }
  const auto s = NoiseSchedule::linear(steps);
  for (int t = 1; t <= steps; ++t) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        double sum = 0.0;
        for (int a = 0; a < 2; ++a) sum += step_transition(s, t, a, x) * marginal_transition(s, t - 1, y, a);
        EXPECT_NEAR(sum, marginal_transition(s, t, y, x), 1e-12);
      }
    }
  }
}

TEST(ForwardFlip, Examples) {
  EXPECT_NEAR(forward_flip_prob(NoiseSchedule::linear(32), 1), 0.015625, 1e-15);
  EXPECT_EQ(forward_flip_prob(NoiseSchedule::from_beta_bar({0.0, 0.2, 0.2, 0.5}), 2), 0.0);
  EXPECT_DOUBLE_EQ(forward_flip_prob(NoiseSchedule::from_beta_bar({0.0, 0.2, 0.45, 0.5}), 3), 0.5);
  EXPECT_THROW(forward_flip_prob(NoiseSchedule::linear(4), 0), std::out_of_range);
}

TEST(ReverseMarginal, MixesTheTwoCases) {
  const auto s = example_schedule();
  EXPECT_EQ(reverse_marginal(s, 2, true, 1.0), posterior(s, 2, true, true));
  EXPECT_EQ(reverse_marginal(s, 2, false, 0.0), posterior(s, 2, false, false));
  EXPECT_NEAR(reverse_marginal(s, 2, true, 0.5), 0.832641, 1e-6);
  EXPECT_THROW(reverse_marginal(s, 2, true, 1.5), std::invalid_argument);
  EXPECT_THROW(reverse_marginal(s, 2, true, std::nan("")), std::invalid_argument);
}

TEST(NoiseGraph, StepZeroIsIdentity) {
  Rng rng(1);
  const auto g = Graph::complete(9);
  EXPECT_EQ(noise_graph(g, NoiseSchedule::linear(8), 0, rng), g);
}

TEST(NoiseGraph, DeterministicGivenSeed) {
  const auto s = NoiseSchedule::linear(8);
  Rng a(77), b(77);
  EXPECT_EQ(noise_graph(Graph::complete(20), s, 5, a), noise_graph(Graph::complete(20), s, 5, b));
}

TEST(NoiseGraph, CompleteGraphEdgeCountWithinBinomialBound) {
  const auto s = NoiseSchedule::linear(32);
  const int t = 4, n = 30, reps = 2000;
  const double pairs = n * (n - 1) / 2.0;
  const double keep = 1.0 - s.beta_bar(t);
  Rng rng(5);
  double total = 0.0;
  for (int r = 0; r < reps; ++r) total += static_cast<double>(noise_graph(Graph::complete(n), s, t, rng).edge_count());
  const double trials = pairs * reps;
  EXPECT_NEAR(total / trials, keep, 3.0 * std::sqrt(keep * (1 - keep) / trials));
}

TEST(NoiseGraph, PureNoiseAtFinalStep) {
  const auto s = NoiseSchedule::linear(16);
  Rng rng(6);
  std::size_t ones = 0, total = 0;
  while (total < 100000) {
    const auto g = noise_graph(Graph::complete(50), s, 16, rng);
    ones += g.edge_count();
    total += g.pair_count();
  }
  EXPECT_NEAR(static_cast<double>(ones) / static_cast<double>(total), 0.5, 0.01);
}

}  // namespace
}  // namespace graphdiff
