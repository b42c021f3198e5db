#include <gtest/gtest.h>

#include <cmath>

#include "bdfeas/bounds.hpp"
#include "bdfeas/error.hpp"
#include "bdfeas/harness.hpp"
#include "oracles.hpp"

using namespace bdfeas;

namespace {

DistributionPair benchmark(double gamma = 0.5) {
  return DistributionPair(Categorical::uniform(2), Categorical::point_mass(2, 0), gamma, 0.5);
}

Type3Detector constant(Verdict v) {
  return [v](const SymbolDataset&, const DistributionPair&, std::uint64_t) { return v; };
}

}  // namespace

TEST(Wilson, MatchesTextbookFormula) {
  for (std::size_t e : {0, 1, 17, 50, 99, 100}) {
    const auto r = wilson_interval(e, 100);
    double lo = 0, hi = 0;
    oracle::wilson(static_cast<double>(e), 100, kZ99, lo, hi);
    EXPECT_NEAR(r.ci_low, std::min(lo, r.p_hat), 1e-15);
    EXPECT_NEAR(r.ci_high, std::max(hi, r.p_hat), 1e-15);
    EXPECT_LE(r.ci_low, r.p_hat);
    EXPECT_LE(r.p_hat, r.ci_high);
  }
  EXPECT_THROW(wilson_interval(0, 0), ParameterError);
  EXPECT_THROW(wilson_interval(3, 2), ParameterError);
}

TEST(EstimateRisk, DisjointSupportsAreSeparable) {
  const DistributionPair pair(Categorical::point_mass(3, 0), Categorical({0.0, 0.5, 0.5}), 1.0,
                              0.0);
  EXPECT_EQ(estimate_risk(make_np_detector(), pair, 4, 1000, 1).p_hat, 0.0);
}

TEST(EstimateRisk, IdenticalDistributionsGiveHalf) {
  const auto u = Categorical::uniform(3);
  const DistributionPair pair(u, u, 0.5, 1.0);
  for (const Detector& g : {Detector{make_np_detector()}, Detector{make_type2_tv(0.5, 0.5)}}) {
    EXPECT_TRUE(estimate_risk(g, pair, 5, 4000, 2).covers(0.5));
  }
}

TEST(EstimateRisk, NpMatchesEnumeration) {
  const auto r = estimate_risk(make_np_detector(), benchmark(), 2, 20000, 3);
  EXPECT_TRUE(r.covers(0.34375)) << r.p_hat;
}

TEST(EstimateRisk, RejectsTooFewTrials) {
  EXPECT_THROW(estimate_risk(make_np_detector(), benchmark(), 2, 99, 0), ParameterError);
}

TEST(EstimateRisk, DeterministicAcrossThreadCounts) {
  const RiskProblem problem(DistributionPair(Categorical({0.2, 0.3, 0.5}),
                                             Categorical({0.6, 0.3, 0.1}), 0.4, 0.5),
                            6);
  const auto one = estimate_risk(make_type2_tv(0.4, 0.5), problem, 3000, 77, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    EXPECT_EQ(estimate_risk(make_type2_tv(0.4, 0.5), problem, 3000, 77, t), one);
  }
  EXPECT_EQ(estimate_risk(make_type2_tv(0.4, 0.5), problem, 3000, 77, 1), one);
}

TEST(EstimateRisk, ExceptionsPropagateFromWorkers) {
  const Type3Detector boom = [](const SymbolDataset&, const DistributionPair&, std::uint64_t) ->
      Verdict { throw DegenerateError("boom"); };
  EXPECT_THROW(estimate_risk(boom, RiskProblem(benchmark(), 2), 200, 0, 4), DegenerateError);
}

// Coverage of the 99% interval over many independent estimates of a known risk.
TEST(EstimateRisk, IntervalCalibration) {
  const RiskProblem problem(benchmark(), 2);
  int covered = 0;
  const int meta = 1000;
  for (int i = 0; i < meta; ++i) {
    covered += estimate_risk(make_np_detector(), problem, 200, 1000 + i, 1).covers(0.34375) ? 1 : 0;
  }
  EXPECT_GE(covered, 970);
}

TEST(ConditionalErrors, AverageMatchesRisk) {
  const RiskProblem problem(benchmark(), 3);
  const auto c = estimate_conditional_errors(make_np_detector(), problem, 10000, 4);
  const double avg = 0.5 * (c.false_backdoor.p_hat + c.missed_backdoor.p_hat);
  const auto r = estimate_risk(make_np_detector(), problem, 20000, 5);
  EXPECT_NEAR(avg, r.p_hat, r.ci_width() + 0.5 * c.false_backdoor.ci_width());
  for (const auto& e : {c.false_backdoor, c.missed_backdoor})
    EXPECT_LE(e.p_hat, 2 * r.p_hat + 3 * r.ci_width());
}

TEST(ConditionalErrors, DisjointSupportsBothZero) {
  const DistributionPair pair(Categorical::point_mass(2, 0), Categorical::point_mass(2, 1), 1.0,
                              0.0);
  const auto c = estimate_conditional_errors(make_np_detector(), RiskProblem(pair, 3), 500, 1);
  EXPECT_EQ(c.false_backdoor.errors, 0u);
  EXPECT_EQ(c.missed_backdoor.errors, 0u);
}

// p0 = (0.7, 0.3) and gamma = 4/7 give p1 = (0.3, 0.7): the two hypotheses
// mirror each other, and odd n rules out likelihood ties.
TEST(ConditionalErrors, SymmetricInstance) {
  const DistributionPair pair(Categorical({0.7, 0.3}), Categorical({0.0, 1.0}), 4.0 / 7.0, 0.3);
  const auto c = estimate_conditional_errors(make_np_detector(), RiskProblem(pair, 5), 20000, 6);
  EXPECT_NEAR(c.false_backdoor.p_hat, c.missed_backdoor.p_hat,
              c.false_backdoor.ci_width() + c.missed_backdoor.ci_width());
}

TEST(GeneralizedRisk, OodBayesRuleMatchesFloor) {
  const auto p0 = Categorical({0.1, 0.2, 0.3, 0.4});
  const auto pb = Categorical({0.4, 0.4, 0.1, 0.1});
  const auto rule = bayes_sample_rule(p0, pb);
  const SampleDetector g = [&](const Parameters&, const SymbolDataset&, Symbol x) {
    return rule(x);
  };
  const RiskProblem problem(DistributionPair(p0, pb, 0.5, 0.6), 3);
  const auto r = estimate_generalized_risk(g, problem, JointPrior::default_for(Flavor::kOod),
                                           Flavor::kOod, 20000, 8);
  EXPECT_TRUE(r.covers(0.5 - 0.5 * tv_distance(p0, pb))) << r.p_hat;
}

TEST(GeneralizedRisk, ConstantDetectorMbd) {
  const SampleDetector zero = [](const Parameters&, const SymbolDataset&, Symbol) {
    return Verdict::kClean;
  };
  const auto r = estimate_generalized_risk(zero, RiskProblem(benchmark(), 2),
                                           JointPrior({0.25, 0.25, 0.25, 0.25}), Flavor::kMbd,
                                           10000, 9);
  EXPECT_TRUE(r.covers(0.5));
}

TEST(GeneralizedRisk, SbdPriorNeverDrawsExcludedCell) {
  const SampleDetector zero = [](const Parameters&, const SymbolDataset&, Symbol) {
    return Verdict::kClean;
  };
  std::array<std::size_t, 4> cells{};
  estimate_generalized_risk(zero, RiskProblem(benchmark(), 2), JointPrior({0.3, 0.0, 0.2, 0.5}),
                            Flavor::kSbd, 5000, 10, 0, &cells);
  EXPECT_EQ(cells[1], 0u);
  EXPECT_EQ(cells[0] + cells[2] + cells[3], 5000u);
  EXPECT_THROW(estimate_generalized_risk(zero, RiskProblem(benchmark(), 2),
                                         JointPrior({0.5, 0.5, 0.0, 0.0}), Flavor::kSbd, 100, 0),
               ConfigError);
  EXPECT_THROW(estimate_generalized_risk(zero, RiskProblem(benchmark(), 2),
                                         JointPrior({0.5, 0.0, 0.5, 0.0}), Flavor::kOod, 100, 0),
               ConfigError);
}

TEST(Flavor, TargetsAndNames) {
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(target(Flavor::kMbd, j, i), j);
      EXPECT_EQ(target(Flavor::kSbd, j, i), i);
      EXPECT_EQ(target(Flavor::kOod, j, i), i);
    }
  }
  for (Flavor f : {Flavor::kMbd, Flavor::kSbd, Flavor::kOod})
    EXPECT_EQ(flavor_from_string(to_string(f)), f);
  EXPECT_THROW(flavor_from_string("xyz"), ConfigError);
  EXPECT_THROW(JointPrior({0.5, 0.5, 0.5, 0.0}), ParameterError);
}

TEST(TrainerStub, AdditiveSmoothing) {
  const auto theta = TrainerStub{}(SymbolDataset({0, 0, 1}, 3));
  EXPECT_DOUBLE_EQ(theta[0], 3.0 / 6);
  EXPECT_DOUBLE_EQ(theta[1], 2.0 / 6);
  EXPECT_DOUBLE_EQ(theta[2], 1.0 / 6);
}

TEST(Type0Demo, WellSeparatedPair) {
  const DistributionPair pair(Categorical({0.5, 0.5, 0.0, 0.0}), Categorical({0.0, 0.0, 0.5, 0.5}),
                              1.0, 0.0);
  const RiskProblem problem(pair, 30);
  EXPECT_LT(type0_demo_risk(make_type0_tv(1.0, 0.0), problem, 2000, 11).p_hat, 0.1);
  const Type0Detector constant0 = [](const Parameters&, const SymbolDataset&) {
    return Verdict::kBackdoored;
  };
  EXPECT_TRUE(type0_demo_risk(constant0, problem, 2000, 12).covers(0.5));
}

TEST(Ladder, OrderingAndAdapters) {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const DistributionPair pair(Categorical(oracle::random_probs(s, 4)),
                                Categorical(oracle::random_probs(s + 40, 4)), 0.5, 0.5);
    const RiskProblem problem(pair, 8);
    const auto ladder = run_detector_ladder(problem, 3000, s);
    for (int level = 1; level <= 3; ++level) {
      const auto& lo = ladder.best(level - 1).risk;
      const auto& hi = ladder.best(level).risk;
      EXPECT_LE(hi.p_hat, lo.p_hat + 3 * std::max(lo.ci_width(), hi.ci_width()));
    }
    for (const auto& e : ladder.entries) {
      if (e.source.empty()) continue;
      const auto& src = ladder.find(e.source).risk;
      EXPECT_NEAR(e.risk.p_hat, src.p_hat, 3 * std::max(e.risk.ci_width(), src.ci_width()));
    }
    EXPECT_EQ(ladder.find("type3<-type2-tv").risk, ladder.find("type2-tv").risk);
    EXPECT_GE(ladder.best(0).risk.p_hat,
              ladder.find("np").risk.p_hat - 3 * ladder.find("np").risk.ci_width());
  }
}
