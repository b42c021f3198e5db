#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bdfeas/categorical.hpp"
#include "bdfeas/detectors.hpp"
#include "bdfeas/harness.hpp"

namespace bdfeas {

/// Adversary that defeats any fixed Type-2 detector on a uniform clean
/// distribution: it hides the backdoor in M = floor(beta K) random symbols.
struct ImpossibilityConfig {
  ImpossibilityConfig(std::size_t k, double beta, double gamma, std::size_t n);

  std::size_t k;
  double beta;
  double gamma;
  std::size_t n;
  std::size_t m;
};

/// Y_v for v in [0, m): i.i.d. uniform symbols, each a pure function of
/// (support_seed, v) so the support never has to be materialized.
Symbol backdoor_symbol(const ImpossibilityConfig& config, std::uint64_t support_seed,
                       std::size_t v);

/// All m support symbols Y_1..Y_M.
std::vector<Symbol> backdoor_support(const ImpossibilityConfig& config,
                                     std::uint64_t support_seed);

/// N draws given the support: Z_n = Y_{V_n} with probability gamma, else uniform.
SymbolDataset imposs_sample_given_support(const ImpossibilityConfig& config,
                                          std::uint64_t support_seed, std::uint64_t draw_seed);

/// Fresh support and draws from one seed.
SymbolDataset imposs_sampler(const ImpossibilityConfig& config, std::uint64_t seed);

/// Lower bound 1/2 exp(-N^2 / (M - N)) on the risk of any Type-2 detector.
/// Requires m > n.
double imposs_floor(const ImpossibilityConfig& config);

/// Monte-Carlo risk of `detector` distinguishing uniform i.i.d. data (J = 0)
/// from imposs_sampler output (J = 1).
RiskEstimate imposs_probe(const Type2Detector& detector, const ImpossibilityConfig& config,
                          std::size_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace bdfeas
