#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bdfeas/categorical.hpp"

namespace bdfeas {

/// Detector output. kBackdoored corresponds to J = 1, the dataset drawn from
/// the mixture P1; kClean to J = 0.
enum class Verdict : std::uint8_t { kClean = 0, kBackdoored = 1 };

constexpr int to_int(Verdict v) noexcept { return static_cast<int>(v); }
constexpr Verdict verdict_from(bool backdoored) noexcept {
  return backdoored ? Verdict::kBackdoored : Verdict::kClean;
}

/// Trained model parameters theta = A(D).
using Parameters = std::vector<double>;

/// Training algorithm A.
using Trainer = std::function<Parameters(const SymbolDataset&)>;

// The detector hierarchy, ordered by the information each one receives.
// Randomized detectors take an explicit seed so that every verdict is a pure
// function of the call arguments.

/// Type 0: trained parameters plus M clean samples.
using Type0Detector = std::function<Verdict(const Parameters& theta, const SymbolDataset& clean)>;
/// Type 1: raw training set plus M clean samples.
using Type1Detector =
    std::function<Verdict(const SymbolDataset& train, const SymbolDataset& clean)>;
/// Type 2: raw training set plus the clean distribution.
using Type2Detector =
    std::function<Verdict(const SymbolDataset& train, const Categorical& p0, std::uint64_t seed)>;
/// Type 3: raw training set plus both distributions (and gamma).
using Type3Detector = std::function<Verdict(const SymbolDataset& train,
                                            const DistributionPair& pair, std::uint64_t seed)>;

/// Neyman-Pearson test: backdoored iff sum_n log(p1(x_n) / p0(x_n)) >= 0 with
/// p1 = mix(pair). Symbols impossible under one hypothesis decide outright.
/// Throws ImpossibleSampleError if the dataset has zero likelihood under both.
Verdict np_type3(const SymbolDataset& d, const DistributionPair& pair);

/// Threshold gamma * (1 - beta) / 2 shared by the TV-type detectors.
double tv_threshold(double gamma, double beta);

/// Type-2 type test: backdoored iff TV(p0, S_N) >= gamma (1 - beta) / 2.
Verdict type2_tv(const SymbolDataset& d, const Categorical& p0, double gamma, double beta);

/// Type-1 analogue: compares the training type with the clean-sample type.
Verdict type1_tv(const SymbolDataset& train, const SymbolDataset& clean, double gamma,
                 double beta);

/// Type-0 analogue: compares theta (read as a distribution) with the clean type.
Verdict type0_tv(const Parameters& theta, const SymbolDataset& clean, double gamma, double beta);

Type3Detector make_np_detector();
Type2Detector make_type2_tv(double gamma, double beta);
Type1Detector make_type1_tv(double gamma, double beta);
Type0Detector make_type0_tv(double gamma, double beta);

/// g1(D, D') = g0(A(D), D').
Type1Detector adapt_type1_from_type0(Type0Detector g0, Trainer trainer);

/// g2(D, P0) draws D' ~ P0^m from its seed, then returns g1(D, D').
Type2Detector adapt_type2_from_type1(Type1Detector g1, std::size_t m);

/// g3(D, P0, Pb) = g2(D, P0); Pb is ignored.
Type3Detector adapt_type3_from_type2(Type2Detector g2);

/// Exact OOD risk of a single-sample classifier f:
/// 1/2 Pr{f(X0) = 1} + 1/2 Pr{f(Xb) = 0}, X0 ~ p0, Xb ~ pb.
double ood_risk_exact(const std::function<Verdict(Symbol)>& f, const Categorical& p0,
                      const Categorical& pb);

/// The pointwise Bayes rule f(x) = [pb(x) > p0(x)], which attains
/// 1/2 - 1/2 TV(p0, pb) in ood_risk_exact.
std::function<Verdict(Symbol)> bayes_sample_rule(const Categorical& p0, const Categorical& pb);

}  // namespace bdfeas
