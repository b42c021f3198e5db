#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bdfeas/rng.hpp"

namespace bdfeas {

using Symbol = std::uint32_t;

/// Tolerance on the total mass of a probability vector.
inline constexpr double kProbTolerance = 1e-12;

/// Default cap on K^n outcomes for the enumeration oracles.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Probability distribution on the finite alphabet {0, ..., K-1}.
///
/// Entries are nonnegative and sum to one. Inputs whose total deviates from one
/// by at most kProbTolerance are renormalized; anything else is rejected. The
/// cumulative mass is precomputed so that sampling is a binary search.
class Categorical {
 public:
  explicit Categorical(std::vector<double> probs);

  static Categorical uniform(std::size_t k);
  static Categorical point_mass(std::size_t k, Symbol symbol);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t x) const noexcept { return probs_[x]; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Inverse-CDF draw of a single symbol.
  Symbol draw(CounterRng& rng) const noexcept;

  friend bool operator==(const Categorical&, const Categorical&) = default;

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

/// An i.i.d. sample D = (X_1, ..., X_N) over an alphabet of size K.
class SymbolDataset {
 public:
  SymbolDataset(std::vector<Symbol> symbols, std::size_t alphabet_size);

  std::size_t size() const noexcept { return symbols_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

  friend bool operator==(const SymbolDataset&, const SymbolDataset&) = default;

 private:
  std::vector<Symbol> symbols_;
  std::size_t alphabet_size_;
};

/// The type S_N of a dataset: S_N(x) = count(x) / N.
class EmpiricalType {
 public:
  EmpiricalType(std::vector<std::uint64_t> counts, std::uint64_t sample_count);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t sample_count() const noexcept { return sample_count_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  double operator[](std::size_t x) const noexcept {
    return static_cast<double>(counts_[x]) / static_cast<double>(sample_count_);
  }
  std::vector<double> frequencies() const;
  Categorical to_categorical() const;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t sample_count_;
};

/// A clean/backdoor pair together with the poisoning rate gamma and the
/// closeness slack beta of the admissible set {TV(P0, Pb) >= 1 - beta}.
struct DistributionPair {
  DistributionPair(Categorical p0, Categorical pb, double gamma, double beta);

  Categorical p0;
  Categorical pb;
  double gamma;
  double beta;

  std::size_t alphabet_size() const noexcept { return p0.size(); }

  /// TV(p0, pb) >= 1 - beta, up to kProbTolerance.
  bool admissible() const;
};

/// Half-L1 distance; for finite alphabets this equals sup_A |P(A) - Q(A)|.
double tv_distance(const Categorical& p, const Categorical& q);
double tv_distance(const EmpiricalType& s, const Categorical& p);

/// TV(S_N, p) computed from the dataset's support only, in O(N log N),
/// without materializing a dense type vector. Suited to huge alphabets.
double type_tv_distance(const SymbolDataset& d, const Categorical& p);

/// TV between the types of two datasets over the same alphabet.
double type_tv_distance(const SymbolDataset& a, const SymbolDataset& b);

/// P1 = gamma * pb + (1 - gamma) * p0.
Categorical mix(const Categorical& p0, const Categorical& pb, double gamma);
Categorical mix(const DistributionPair& pair);

SymbolDataset sample(const Categorical& p, std::size_t n, std::uint64_t seed);
SymbolDataset sample(const Categorical& p, std::size_t n, CounterRng& rng);

EmpiricalType empirical_type(const SymbolDataset& d);

/// Exact TV(p0^n, p1^n) by enumerating all K^n outcomes. Oracle only.
double product_tv_exact(const Categorical& p0, const Categorical& p1, std::size_t n,
                        std::uint64_t cap = kDefaultEnumerationCap);

/// K^n, saturating to UINT64_MAX once the count exceeds `cap`.
std::uint64_t outcome_count(std::size_t k, std::size_t n, std::uint64_t cap);

}  // namespace bdfeas
