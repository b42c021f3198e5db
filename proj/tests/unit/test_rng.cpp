#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bdfeas/rng.hpp"
#include "oracles.hpp"

using bdfeas::CounterRng;

TEST(Rng, SameSeedSameStream) {
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, DifferentSeedsDiffer) {
  CounterRng a(1);
  CounterRng b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a() == b() ? 1 : 0;
  EXPECT_EQ(same, 0);
}

TEST(Rng, DerivedSeedsAreDistinct) {
  EXPECT_NE(bdfeas::derive_seed(0, 0), bdfeas::derive_seed(0, 1));
  EXPECT_NE(bdfeas::derive_seed(0, 1), bdfeas::derive_seed(1, 0));
  static_assert(bdfeas::mix64(0) == 0, "finalizer fixes zero");
}

TEST(Rng, UniformIndexInRangeAndBalanced) {
  CounterRng rng(7);
  const std::size_t k = 10;
  const int n = 100000;
  std::vector<double> counts(k, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto x = rng.uniform_index(k);
    ASSERT_LT(x, k);
    counts[x] += 1;
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(n) / k;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, oracle::chi_square_upper(k - 1, 3.09));
}

TEST(Rng, UniformIndexDegenerateBounds) {
  CounterRng rng(3);
  EXPECT_EQ(rng.uniform_index(0), 0u);
  EXPECT_EQ(rng.uniform_index(1), 0u);
}

TEST(Rng, Uniform01InUnitInterval) {
  CounterRng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, BernoulliEdges) {
  CounterRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(rng.bernoulli(0.0));
    EXPECT_TRUE(rng.bernoulli(1.0));
  }
}

TEST(Rng, NormalMoments) {
  CounterRng rng(9);
  const int n = 200000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s3 / n, 0.0, 4 * std::sqrt(15.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 4 * std::sqrt(96.0 / n));
}
