#include "bdfeas/impossibility.hpp"

#include <cmath>
#include <limits>

#include "bdfeas/error.hpp"
#include "bdfeas/rng.hpp"

namespace bdfeas {

namespace {

constexpr std::size_t kMaxSupport = 100'000'000;

std::size_t support_size(std::size_t k, double beta) {
  const double m = std::floor(beta * static_cast<double>(k));
  return m < 1.0 ? 0 : static_cast<std::size_t>(m);
}

}  // namespace

ImpossibilityConfig::ImpossibilityConfig(std::size_t k_, double beta_, double gamma_,
                                         std::size_t n_)
    : k(k_), beta(beta_), gamma(gamma_), n(n_), m(0) {
  if (k == 0 || k > std::numeric_limits<Symbol>::max())
    throw ParameterError("alphabet size out of range");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  if (n == 0) throw ParameterError("n must be positive");
  m = support_size(k, beta);
  if (m < 1) throw ParameterError("floor(beta * k) must be at least 1");
}

Symbol backdoor_symbol(const ImpossibilityConfig& config, std::uint64_t support_seed,
                       std::size_t v) {
  CounterRng rng(derive_seed(support_seed, v));
  return static_cast<Symbol>(rng.uniform_index(config.k));
}

std::vector<Symbol> backdoor_support(const ImpossibilityConfig& config,
                                     std::uint64_t support_seed) {
  if (config.m > kMaxSupport) throw ResourceError("support too large to materialize");
  std::vector<Symbol> y(config.m);
  for (std::size_t v = 0; v < config.m; ++v) y[v] = backdoor_symbol(config, support_seed, v);
  return y;
}

SymbolDataset imposs_sample_given_support(const ImpossibilityConfig& config,
                                          std::uint64_t support_seed, std::uint64_t draw_seed) {
  CounterRng rng(draw_seed);
  std::vector<Symbol> z(config.n);
  for (auto& s : z) {
    if (rng.bernoulli(config.gamma)) {
      s = backdoor_symbol(config, support_seed, rng.uniform_index(config.m));
    } else {
      s = static_cast<Symbol>(rng.uniform_index(config.k));
    }
  }
  return SymbolDataset(std::move(z), config.k);
}

SymbolDataset imposs_sampler(const ImpossibilityConfig& config, std::uint64_t seed) {
  return imposs_sample_given_support(config, derive_seed(seed, 0), derive_seed(seed, 1));
}

double imposs_floor(const ImpossibilityConfig& config) {
  if (config.m <= config.n) throw ParameterError("floor needs m > n");
  const auto n = static_cast<double>(config.n);
  const auto m = static_cast<double>(config.m);
  return 0.5 * std::exp(-n * n / (m - n));
}

RiskEstimate imposs_probe(const Type2Detector& detector, const ImpossibilityConfig& config,
                          std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (config.m <= config.n) throw ParameterError("probe needs m > n");
  const Categorical p0 = Categorical::uniform(config.k);
  const DatasetSource clean = [&](std::uint64_t s) {
    CounterRng rng(s);
    std::vector<Symbol> z(config.n);
    for (auto& x : z) x = static_cast<Symbol>(rng.uniform_index(config.k));
    return SymbolDataset(std::move(z), config.k);
  };
  const DatasetSource backdoored = [&](std::uint64_t s) { return imposs_sampler(config, s); };
  const DatasetDecision decide = [&](const SymbolDataset& d, std::uint64_t s) {
    return detector(d, p0, s);
  };
  return monte_carlo_risk(clean, backdoored, decide, trials, seed, threads);
}

}  // namespace bdfeas
