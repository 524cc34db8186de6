#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "greedymine/analytics.hpp"
#include "greedymine/core_model.hpp"

using namespace greedymine;

TEST(IncentiveBoundsTest, Corners) {
  const auto b = incentive_bounds(0.25);
  EXPECT_NEAR(b.r_min_inclusion, 0.3684, 1e-4);
  EXPECT_NEAR(b.r_max_extension, 0.4286, 1e-4);
  EXPECT_NEAR(b.r_min_modified, 0.2000, 1e-4);
  ASSERT_TRUE(b.window);
  EXPECT_DOUBLE_EQ(b.window->lower, b.r_min_modified);
  EXPECT_DOUBLE_EQ(b.window->upper, b.r_max_extension);
}

TEST(IncentiveBoundsTest, ZeroPower) {
  const auto b = incentive_bounds(0.0);
  EXPECT_DOUBLE_EQ(b.r_min_inclusion, 0.0);
  EXPECT_DOUBLE_EQ(b.r_min_modified, 0.0);
  EXPECT_DOUBLE_EQ(b.r_max_extension, 0.5);
  ASSERT_TRUE(b.window);
  EXPECT_EQ(*b.window, (Interval{0.0, 0.5}));
}

TEST(IncentiveBoundsTest, Rejects) {
  EXPECT_THROW(incentive_bounds(1.0), InvalidArgument);
  EXPECT_THROW(incentive_bounds(-0.01), InvalidArgument);
  EXPECT_THROW(incentive_bounds(1.01), InvalidArgument);
}

// Each bound is where the attacker's revenue comparison changes sign.
TEST(IncentiveBoundsTest, BoundsAreSignChanges) {
  for (double a : {0.05, 0.1, 0.25, 0.33, 0.4}) {
    const auto b = incentive_bounds(a);
    const auto inclusion = [a](double r) { return (1.0 - r) * (1.0 + a - a * a) - (1.0 - a); };
    const auto modified = [a](double r) { return r * (1.0 + a) - a; };
    const auto extension = [a](double r) { return (1.0 - a) - r * (2.0 - a); };
    EXPECT_NEAR(inclusion(b.r_min_inclusion), 0.0, 1e-14);
    EXPECT_GT(inclusion(b.r_min_inclusion - 1e-6), 0.0);
    EXPECT_LT(inclusion(b.r_min_inclusion + 1e-6), 0.0);
    EXPECT_NEAR(modified(b.r_min_modified), 0.0, 1e-14);
    EXPECT_LT(modified(b.r_min_modified - 1e-6), 0.0);
    EXPECT_GT(modified(b.r_min_modified + 1e-6), 0.0);
    EXPECT_NEAR(extension(b.r_max_extension), 0.0, 1e-14);
    EXPECT_GT(extension(b.r_max_extension - 1e-6), 0.0);
    EXPECT_LT(extension(b.r_max_extension + 1e-6), 0.0);
  }
}

TEST(StateProbabilitiesTest, Examples) {
  const auto p = state_probabilities(StrategyParams(0.5, 0.0));
  EXPECT_NEAR(p.p_h0, 0.75, 1e-15);
  EXPECT_NEAR(p.p_a2, 0.125, 1e-15);
  EXPECT_NEAR(p.p_h10, 0.25, 1e-15);
  EXPECT_NEAR(p.p_a20, 1.0 / 12.0, 1e-15);

  for (double g : {0.0, 0.5, 1.0}) {
    const auto z = state_probabilities(StrategyParams(0.0, g));
    EXPECT_EQ(z.p_h0, 0.0);
    EXPECT_EQ(z.p_h10, 0.0);
    EXPECT_EQ(z.p_a2, 0.0);
    EXPECT_EQ(z.p_a20, 0.0);
  }

  const auto q = state_probabilities(StrategyParams(0.2, 1.0));
  EXPECT_NEAR(q.p_h10, 0.0929524, 1e-7);
  EXPECT_NEAR(q.p_a20, 0.0243810, 1e-7);
}

TEST(StateProbabilitiesTest, RecurrencesMatchExpandedForms) {
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double a = i / 100.0;
      const double g = j / 10.0;
      const auto p = state_probabilities(StrategyParams(a, g));
      const double d = 1.0 - a * (1.0 - a);
      const double b = 1.0 - a;
      EXPECT_NEAR(p.p_h0, a * (2.0 - a), 1e-12);
      EXPECT_NEAR(p.p_a2, a * b * b, 1e-12);
      EXPECT_NEAR(p.p_h10, (a * a * b * (2.0 - a) + g * a * a * b * b * b) / d, 1e-12);
      EXPECT_NEAR(p.p_a20, (2.0 - g) * a * a * b * b * b / d, 1e-12);
    }
  }
}

TEST(HonestRevenueTest, Examples) {
  EXPECT_NEAR(honest_revenue(StrategyParams(0.3, 0.5, 0.4)), 0.3, 1e-15);
  EXPECT_EQ(honest_revenue(StrategyParams(0.0, 0.5, 0.7)), 0.0);
  EXPECT_EQ(honest_revenue(StrategyParams(1.0, 0.5, 0.1)), 1.0);
}

TEST(HonestRevenueTest, IndependentOfLeaderShare) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double a = i / 99.0;
      const double r = j / 99.0;
      worst = std::max(worst, std::abs(honest_revenue(StrategyParams(a, 0.5, r)) - a));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(GreedyRevenueTest, Examples) {
  EXPECT_NEAR(greedy_revenue(StrategyParams(0.5, 0.0)), 0.6041667, 1e-7);
  EXPECT_NEAR(greedy_revenue(StrategyParams(0.2, 1.0)), 0.2149333, 1e-7);
  EXPECT_EQ(greedy_revenue(StrategyParams(0.0, 0.3)), 0.0);
}

TEST(GreedyRevenueTest, ReassociatedFlux) {
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const StrategyParams params(i / 50.0, j / 10.0);
      const auto p = state_probabilities(params);
      const double a = params.alpha();
      const double w = a + params.gamma() * (1.0 - a);
      EXPECT_NEAR(greedy_revenue(params), a * p.p_h0 + w * (p.p_h10 + p.p_a20) + a * p.p_a2, 1e-15);
    }
  }
}

// Paths of at most three blocks into H1 are GG and HGG; forward propagation
// of the distribution must find exactly that mass.
TEST(GreedyRevenueTest, ShortPathEnumeration) {
  for (double a : {0.1, 0.2, 0.3, 0.5}) {
    for (double g : {0.0, 0.5, 1.0}) {
      const StrategyParams params(a, g);
      std::map<ChainState, double> frontier{{ChainState::start(), 1.0}};
      double reached = 0.0;
      for (int step = 0; step < 3; ++step) {
        std::map<ChainState, double> next;
        for (const auto& [state, mass] : frontier) {
          for (const auto& e : transition_distribution(state, params)) {
            if (e.to.kind() == StateKind::H1) {
              reached += mass * e.probability;
            } else {
              next[e.to] += mass * e.probability;
            }
          }
        }
        frontier = std::move(next);
      }
      const double expected = a * a + (1.0 - a) * a * a;
      EXPECT_NEAR(reached, expected, 1e-15);
      EXPECT_LE(reached, greedy_revenue(params) + 1e-15);
    }
  }
}

TEST(RerTest, Examples) {
  EXPECT_NEAR(rer(0.6041667, 0.5), 0.208333, 1e-6);
  EXPECT_EQ(rer(0.37, 0.37), 0.0);
  const auto r = analyze(StrategyParams(0.1, 0.0));
  EXPECT_NEAR(r.revenue_greedy, 0.0305813, 1e-7);
  ASSERT_TRUE(r.rer);
  EXPECT_NEAR(*r.rer, -0.694187, 1e-6);
  EXPECT_THROW(rer(0.1, 0.0), UndefinedRer);
  EXPECT_FALSE(analyze(StrategyParams(0.0, 0.5)).rer);
}

TEST(RerTest, StrictlyIncreasingInGamma) {
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    double previous = -INFINITY;
    for (double g : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double value = *analyze(StrategyParams(a, g)).rer;
      EXPECT_GT(value, previous) << "alpha=" << a << " gamma=" << g;
      previous = value;
    }
  }
}

TEST(ThresholdTest, Examples) {
  const double one = threshold_alpha(1.0);
  EXPECT_NEAR(one, 0.180, 0.005);
  const double zero = threshold_alpha(0.0);
  EXPECT_GT(zero, 0.3);
  EXPECT_LT(zero, 0.4);
  EXPECT_EQ(threshold_alpha(0.5, 1e-9), threshold_alpha(0.5, 1e-9));
}

TEST(ThresholdTest, IsARoot) {
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double a = threshold_alpha(g, 1e-10);
    const auto gap = [g](double x) {
      const StrategyParams p(x, g);
      return greedy_revenue(p) - honest_revenue(p);
    };
    EXPECT_LT(gap(a - 1e-6), 0.0);
    EXPECT_GT(gap(a + 1e-6), 0.0);
  }
}

TEST(ThresholdTest, NonIncreasingInGamma) {
  double previous = 1.0;
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double a = threshold_alpha(g);
    EXPECT_LE(a, previous);
    EXPECT_GT(a, 0.0);
    EXPECT_LE(a, 0.5);
    previous = a;
  }
}

TEST(ThresholdTest, Errors) {
  EXPECT_THROW(threshold_alpha(0.5, 0.0), InvalidArgument);
  EXPECT_THROW(threshold_alpha(1.5), InvalidArgument);
  EXPECT_THROW(first_root([](double) { return 1.0; }, 0.0, 1.0, 1e-6), NoThreshold);
}

TEST(FirstRootTest, PicksSmallestRoot) {
  // roots at 0.2 and 0.7
  const auto f = [](double x) { return (x - 0.2) * (x - 0.7); };
  EXPECT_NEAR(first_root(f, 0.0, 1.0, 1e-12), 0.2, 1e-11);
  EXPECT_NEAR(first_root(f, 0.3, 1.0, 1e-12), 0.7, 1e-11);
}
