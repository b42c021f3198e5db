#include "bdfeas/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdfeas/error.hpp"

namespace bdfeas {

namespace {

// Neumaier summation; plain accumulation drifts past 1e-12 on large alphabets.
double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

void require_same_alphabet(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("alphabet size mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw ParameterError("categorical distribution needs at least one symbol");
  }
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ParameterError("probabilities must be finite and nonnegative");
    }
  }
  const double total = compensated_sum(probs_);
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw ParameterError("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  if (total != 1.0) {
    for (double& p : probs_) p /= total;
  }

  cdf_.resize(probs_.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    cdf_[i] = acc;
    if (probs_[i] > 0.0) last_positive = i;
  }
  // Pin the top of the CDF so rounding can neither leave a gap below 1 nor
  // hand mass to trailing zero-probability symbols.
  std::fill(cdf_.begin() + static_cast<std::ptrdiff_t>(last_positive), cdf_.end(), 1.0);
}

Categorical Categorical::uniform(std::size_t k) {
  if (k == 0) throw ParameterError("uniform distribution needs k >= 1");
  return Categorical(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Categorical Categorical::point_mass(std::size_t k, Symbol symbol) {
  if (symbol >= k) throw ParameterError("point mass symbol outside alphabet");
  std::vector<double> probs(k, 0.0);
  probs[symbol] = 1.0;
  return Categorical(std::move(probs));
}

Symbol Categorical::draw(CounterRng& rng) const noexcept {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<Symbol>(it - cdf_.begin());
}

SymbolDataset::SymbolDataset(std::vector<Symbol> symbols, std::size_t alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (symbols_.empty()) throw ParameterError("dataset must contain at least one symbol");
  if (alphabet_size_ == 0) throw ParameterError("alphabet size must be >= 1");
  for (Symbol s : symbols_) {
    if (s >= alphabet_size_) {
      throw DimensionError("symbol " + std::to_string(s) + " outside alphabet of size " +
                           std::to_string(alphabet_size_));
    }
  }
}

EmpiricalType::EmpiricalType(std::vector<std::uint64_t> counts, std::uint64_t sample_count)
    : counts_(std::move(counts)), sample_count_(sample_count) {
  if (counts_.empty() || sample_count_ == 0) {
    throw ParameterError("empirical type needs a nonempty alphabet and sample");
  }
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  if (total != sample_count_) throw ParameterError("type counts do not sum to N");
}

std::vector<double> EmpiricalType::frequencies() const {
  std::vector<double> out(counts_.size());
  for (std::size_t x = 0; x < counts_.size(); ++x) out[x] = (*this)[x];
  return out;
}

Categorical EmpiricalType::to_categorical() const { return Categorical(frequencies()); }

DistributionPair::DistributionPair(Categorical p0_in, Categorical pb_in, double gamma_in,
                                   double beta_in)
    : p0(std::move(p0_in)), pb(std::move(pb_in)), gamma(gamma_in), beta(beta_in) {
  require_same_alphabet(p0.size(), pb.size());
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
}

bool DistributionPair::admissible() const {
  return tv_distance(p0, pb) >= 1.0 - beta - kProbTolerance;
}

double tv_distance(const Categorical& p, const Categorical& q) {
  require_same_alphabet(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) sum += std::abs(p[x] - q[x]);
  return std::min(1.0, 0.5 * sum);
}

double tv_distance(const EmpiricalType& s, const Categorical& p) {
  require_same_alphabet(s.size(), p.size());
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) sum += std::abs(s[x] - p[x]);
  return std::min(1.0, 0.5 * sum);
}

double type_tv_distance(const SymbolDataset& d, const Categorical& p) {
  require_same_alphabet(d.alphabet_size(), p.size());
  std::vector<Symbol> sorted(d.symbols().begin(), d.symbols().end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  // Off the support of S_N the gap is p(x) itself, so
  // sum_x |S(x) - p(x)| = sum_{supp} |S(x) - p(x)| + (1 - sum_{supp} p(x)).
  double on_support = 0.0;
  double support_mass = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double freq = static_cast<double>(j - i) / n;
    const double px = p[sorted[i]];
    on_support += std::abs(freq - px);
    support_mass += px;
    i = j;
  }
  const double off_support = std::max(0.0, 1.0 - support_mass);
  return std::min(1.0, 0.5 * (on_support + off_support));
}

double type_tv_distance(const SymbolDataset& a, const SymbolDataset& b) {
  require_same_alphabet(a.alphabet_size(), b.alphabet_size());
  std::vector<Symbol> sa(a.symbols().begin(), a.symbols().end());
  std::vector<Symbol> sb(b.symbols().begin(), b.symbols().end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() || j < sb.size()) {
    Symbol x;
    if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
      x = sa[i];
    } else {
      x = sb[j];
    }
    std::size_t ca = 0;
    std::size_t cb = 0;
    while (i < sa.size() && sa[i] == x) ++i, ++ca;
    while (j < sb.size() && sb[j] == x) ++j, ++cb;
    sum += std::abs(static_cast<double>(ca) / na - static_cast<double>(cb) / nb);
  }
  return std::min(1.0, 0.5 * sum);
}

Categorical mix(const Categorical& p0, const Categorical& pb, double gamma) {
  require_same_alphabet(p0.size(), pb.size());
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  if (gamma == 0.0) return p0;
  if (gamma == 1.0) return pb;
  std::vector<double> out(p0.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = gamma * pb[x] + (1.0 - gamma) * p0[x];
  }
  return Categorical(std::move(out));
}

Categorical mix(const DistributionPair& pair) { return mix(pair.p0, pair.pb, pair.gamma); }

SymbolDataset sample(const Categorical& p, std::size_t n, CounterRng& rng) {
  if (n == 0) throw ParameterError("sample size must be >= 1");
  std::vector<Symbol> symbols(n);
  for (auto& s : symbols) s = p.draw(rng);
  return SymbolDataset(std::move(symbols), p.size());
}

SymbolDataset sample(const Categorical& p, std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample(p, n, rng);
}

EmpiricalType empirical_type(const SymbolDataset& d) {
  std::vector<std::uint64_t> counts(d.alphabet_size(), 0);
  for (Symbol s : d.symbols()) ++counts[s];
  return EmpiricalType(std::move(counts), d.size());
}

std::uint64_t outcome_count(std::size_t k, std::size_t n, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (k != 0 && total > cap / k) return std::numeric_limits<std::uint64_t>::max();
    total *= k;
  }
  return total;
}

double product_tv_exact(const Categorical& p0, const Categorical& p1, std::size_t n,
                        std::uint64_t cap) {
  require_same_alphabet(p0.size(), p1.size());
  if (n == 0) throw ParameterError("product order must be >= 1");
  const std::size_t k = p0.size();
  if (outcome_count(k, n, cap) > cap) {
    throw ResourceError("enumeration of " + std::to_string(k) + "^" + std::to_string(n) +
                        " outcomes exceeds cap " + std::to_string(cap));
  }

  // Odometer over X^n; prefix[i] holds the product of the first i factors.
  std::vector<std::size_t> digits(n, 0);
  std::vector<double> prefix0(n + 1, 1.0);
  std::vector<double> prefix1(n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    prefix0[i + 1] = prefix0[i] * p0[0];
    prefix1[i + 1] = prefix1[i] * p1[0];
  }

  double sum = 0.0;
  while (true) {
    sum += std::abs(prefix0[n] - prefix1[n]);

    std::size_t pos = n;
    while (pos > 0 && digits[pos - 1] + 1 == k) --pos;
    if (pos == 0) break;
    ++digits[pos - 1];
    for (std::size_t i = pos; i < n; ++i) digits[i] = 0;
    for (std::size_t i = pos - 1; i < n; ++i) {
      prefix0[i + 1] = prefix0[i] * p0[digits[i]];
      prefix1[i + 1] = prefix1[i] * p1[digits[i]];
    }
  }
  return std::min(1.0, 0.5 * sum);
}

}  // namespace bdfeas
