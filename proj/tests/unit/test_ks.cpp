#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bdfeas/error.hpp"
#include "bdfeas/ks.hpp"
#include "bdfeas/rng.hpp"

using namespace bdfeas;

namespace {

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TEST(KsStatistic, QuantilePlacement) {
  const std::size_t n = 50;
  std::vector<double> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(static_cast<double>(i) / (n + 1));
  EXPECT_LE(ks_statistic(xs, uniform_cdf), 1.0 / (n + 1) + 1e-12);
}

TEST(KsStatistic, SingleValueAtMedian) {
  const std::vector<double> xs{0.5};
  EXPECT_DOUBLE_EQ(ks_statistic(xs, uniform_cdf), 0.5);
}

TEST(KsStatistic, FarLeftTail) {
  const std::vector<double> xs{-1e9, -1e9, -1e9};
  EXPECT_NEAR(ks_statistic(xs, [](double x) { return normal_cdf(x, 0, 1); }), 1.0, 1e-12);
}

TEST(KsStatistic, EmptyThrows) {
  EXPECT_THROW(ks_statistic({}, uniform_cdf), ParameterError);
}

TEST(KsStatistic, MatchesBruteForceSupremum) {
  CounterRng rng(4);
  std::vector<double> xs(37);
  for (auto& x : xs) x = rng.uniform01();
  std::sort(xs.begin(), xs.end());
  // Supremum of |F_n - F| checked on a fine grid plus both sides of each jump.
  double sup = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sup = std::max(sup, std::abs((i + 1) / n - xs[i]));
    sup = std::max(sup, std::abs(i / n - xs[i]));
  }
  EXPECT_NEAR(ks_statistic(xs, uniform_cdf), sup, 1e-15);
}

TEST(KsPvalue, Examples) {
  EXPECT_EQ(ks_pvalue(0.0, 10), 1.0);
  EXPECT_LT(ks_pvalue(1.0, 10000), 1e-12);
  // lambda = 1: choose D so that (sqrt(n) + 0.12 + 0.11/sqrt(n)) D = 1.
  const std::size_t n = 100;
  const double d = 1.0 / (10.0 + 0.12 + 0.011);
  EXPECT_NEAR(ks_pvalue(d, n), 0.2700, 5e-5);
  double series = 0.0;
  for (int k = 1; k < 50; ++k) series += 2 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k);
  EXPECT_NEAR(ks_pvalue(d, n), series, 1e-9);
}

TEST(KsPvalue, MonotoneDecreasingInStatistic) {
  for (std::size_t n : {1, 5, 30, 150, 10000}) {
    double prev = 1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double p = ks_pvalue(i / 1000.0, n);
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
      ASSERT_LE(p, prev + 1e-14) << "n=" << n << " D=" << i / 1000.0;
      prev = p;
    }
  }
}

TEST(KsTest, GrossMisfitRejected) {
  CounterRng rng(8);
  std::vector<double> xs(150);
  for (auto& x : xs) x = 10.0 + rng.normal();
  const auto r = ks_test(xs, [](double x) { return normal_cdf(x, 0.0, 1.0); });
  EXPECT_LT(r.p_value, 1e-6);
  EXPECT_EQ(r.n, 150u);
}

TEST(NormalCdf, Values) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0, 0.0, 1.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054, 0.0, 1.0), 0.975, 1e-12);
  EXPECT_EQ(normal_cdf(-1.0, 0.0, 0.0), 0.0);
  EXPECT_EQ(normal_cdf(1.0, 0.0, 0.0), 1.0);
}
