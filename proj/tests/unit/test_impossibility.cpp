#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bdfeas/error.hpp"
#include "bdfeas/impossibility.hpp"
#include "oracles.hpp"

using namespace bdfeas;

TEST(ImpossibilityConfig, SupportSize) {
  EXPECT_EQ(ImpossibilityConfig(100000, 0.01, 1.0, 20).m, 1000u);
  EXPECT_THROW(ImpossibilityConfig(50, 0.01, 1.0, 20), ParameterError);
  EXPECT_THROW(ImpossibilityConfig(100, 1.5, 1.0, 20), ParameterError);
}

TEST(ImpossSampler, Deterministic) {
  const ImpossibilityConfig cfg(1000, 0.05, 0.7, 30);
  EXPECT_EQ(imposs_sampler(cfg, 4), imposs_sampler(cfg, 4));
  EXPECT_NE(imposs_sampler(cfg, 4), imposs_sampler(cfg, 5));
}

TEST(ImpossSampler, FullPoisonSingleSupportIsConstant) {
  const ImpossibilityConfig cfg(100, 0.01, 1.0, 12);
  ASSERT_EQ(cfg.m, 1u);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto d = imposs_sampler(cfg, s);
    const auto y = backdoor_support(cfg, derive_seed(s, 0));
    for (auto x : d.symbols()) EXPECT_EQ(x, y[0]);
  }
}

TEST(ImpossSampler, NoPoisonIsUniformIid) {
  const ImpossibilityConfig cfg(10, 0.5, 0.0, 1);
  std::vector<double> counts(10, 0);
  const int n = 50000;
  for (int s = 0; s < n; ++s) counts[imposs_sampler(cfg, s)[0]] += 1;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
  EXPECT_LT(chi2, oracle::chi_square_upper(9, 2.326));
}

// Averaged over the random support, each Z_n is uniform on the alphabet.
TEST(ImpossSampler, MarginalIsUniform) {
  const ImpossibilityConfig cfg(100, 0.1, 1.0, 5);
  ASSERT_EQ(cfg.m, 10u);
  std::vector<double> counts(100, 0);
  const int n = 100000;
  for (int s = 0; s < n; ++s) counts[imposs_sampler(cfg, s)[0]] += 1;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - n / 100.0) * (c - n / 100.0) / (n / 100.0);
  EXPECT_LT(chi2, oracle::chi_square_upper(99, 2.326));
}

// Given the support Y, draws are i.i.d. from (1 - gamma) U + gamma Q_Y.
TEST(ImpossSampler, ConditionalMixtureLaw) {
  const ImpossibilityConfig cfg(50, 0.1, 0.6, 1);
  const std::uint64_t support_seed = 99;
  const auto y = backdoor_support(cfg, support_seed);
  std::vector<double> expected(50, (1 - cfg.gamma) / 50);
  for (auto v : y) expected[v] += cfg.gamma / static_cast<double>(cfg.m);
  std::vector<double> counts(50, 0);
  const int n = 100000;
  for (int s = 0; s < n; ++s)
    counts[imposs_sample_given_support(cfg, support_seed, derive_seed(7, s))[0]] += 1;
  double chi2 = 0;
  for (std::size_t x = 0; x < 50; ++x) {
    const double e = expected[x] * n;
    chi2 += (counts[x] - e) * (counts[x] - e) / e;
  }
  EXPECT_LT(chi2, oracle::chi_square_upper(49, 2.326));
}

TEST(ImpossFloor, FormulaValue) {
  const ImpossibilityConfig cfg(100000, 0.01, 1.0, 20);
  EXPECT_NEAR(imposs_floor(cfg), 0.5 * std::exp(-400.0 / 980.0), 1e-15);
  EXPECT_NEAR(imposs_floor(cfg), 0.331, 2e-3);
  EXPECT_THROW(imposs_floor(ImpossibilityConfig(1000, 0.01, 1.0, 20)), ParameterError);
}

TEST(ImpossProbe, Type2RiskAboveFloor) {
  const ImpossibilityConfig cfg(100000, 0.01, 1.0, 20);
  const auto r = imposs_probe(make_type2_tv(1.0, 0.01), cfg, 2000, 1);
  EXPECT_GE(r.p_hat + 3 * r.ci_width(), imposs_floor(cfg));
}

// A collision detector is the natural attack on a small support: it flags
// data with any repeated symbol. Its risk must still respect the floor.
TEST(ImpossProbe, CollisionDetectorRespectsFloor) {
  const ImpossibilityConfig cfg(20000, 0.01, 1.0, 8);
  const Type2Detector collisions = [](const SymbolDataset& d, const Categorical&, std::uint64_t) {
    std::vector<Symbol> xs(d.symbols().begin(), d.symbols().end());
    std::sort(xs.begin(), xs.end());
    return verdict_from(std::adjacent_find(xs.begin(), xs.end()) != xs.end());
  };
  const auto r = imposs_probe(collisions, cfg, 4000, 2);
  EXPECT_GE(r.p_hat + 3 * r.ci_width(), imposs_floor(cfg));
  EXPECT_LT(r.p_hat, 0.5);
}
