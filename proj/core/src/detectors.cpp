#include "bdfeas/detectors.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bdfeas/error.hpp"

namespace bdfeas {

Verdict np_type3(const SymbolDataset& d, const DistributionPair& pair) {
  if (d.alphabet_size() != pair.alphabet_size()) {
    throw DimensionError("dataset alphabet does not match the distribution pair");
  }
  const Categorical p1 = mix(pair);
  const Categorical& p0 = pair.p0;

  bool impossible_under_p0 = false;
  bool impossible_under_p1 = false;
  double llr = 0.0;
  for (Symbol x : d.symbols()) {
    const double a = p0[x];
    const double b = p1[x];
    if (a == 0.0 && b == 0.0) {
      throw ImpossibleSampleError("symbol " + std::to_string(x) +
                                  " has zero probability under both hypotheses");
    }
    if (a == 0.0) {
      impossible_under_p0 = true;
    } else if (b == 0.0) {
      impossible_under_p1 = true;
    } else {
      llr += std::log(b) - std::log(a);
    }
  }
  if (impossible_under_p0 && impossible_under_p1) {
    throw ImpossibleSampleError("dataset has zero likelihood under both hypotheses");
  }
  if (impossible_under_p0) return Verdict::kBackdoored;
  if (impossible_under_p1) return Verdict::kClean;
  return verdict_from(llr >= 0.0);
}

double tv_threshold(double gamma, double beta) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in (0, 1]");
  if (!(beta >= 0.0 && beta < 1.0)) throw ParameterError("beta must lie in [0, 1)");
  return gamma * (1.0 - beta) / 2.0;
}

Verdict type2_tv(const SymbolDataset& d, const Categorical& p0, double gamma, double beta) {
  return verdict_from(type_tv_distance(d, p0) >= tv_threshold(gamma, beta));
}

Verdict type1_tv(const SymbolDataset& train, const SymbolDataset& clean, double gamma,
                 double beta) {
  return verdict_from(type_tv_distance(train, clean) >= tv_threshold(gamma, beta));
}

Verdict type0_tv(const Parameters& theta, const SymbolDataset& clean, double gamma,
                 double beta) {
  if (theta.size() != clean.alphabet_size()) {
    throw DimensionError("parameter vector does not match the clean-sample alphabet");
  }
  const EmpiricalType s = empirical_type(clean);
  double sum = 0.0;
  for (std::size_t x = 0; x < theta.size(); ++x) sum += std::abs(theta[x] - s[x]);
  return verdict_from(0.5 * sum >= tv_threshold(gamma, beta));
}

Type3Detector make_np_detector() {
  return [](const SymbolDataset& d, const DistributionPair& pair, std::uint64_t) {
    return np_type3(d, pair);
  };
}

Type2Detector make_type2_tv(double gamma, double beta) {
  (void)tv_threshold(gamma, beta);
  return [gamma, beta](const SymbolDataset& d, const Categorical& p0, std::uint64_t) {
    return type2_tv(d, p0, gamma, beta);
  };
}

Type1Detector make_type1_tv(double gamma, double beta) {
  (void)tv_threshold(gamma, beta);
  return [gamma, beta](const SymbolDataset& train, const SymbolDataset& clean) {
    return type1_tv(train, clean, gamma, beta);
  };
}

Type0Detector make_type0_tv(double gamma, double beta) {
  (void)tv_threshold(gamma, beta);
  return [gamma, beta](const Parameters& theta, const SymbolDataset& clean) {
    return type0_tv(theta, clean, gamma, beta);
  };
}

Type1Detector adapt_type1_from_type0(Type0Detector g0, Trainer trainer) {
  return [g0 = std::move(g0), trainer = std::move(trainer)](const SymbolDataset& train,
                                                             const SymbolDataset& clean) {
    return g0(trainer(train), clean);
  };
}

Type2Detector adapt_type2_from_type1(Type1Detector g1, std::size_t m) {
  if (m == 0) throw ParameterError("adapter needs m >= 1 clean samples");
  return [g1 = std::move(g1), m](const SymbolDataset& train, const Categorical& p0,
                                 std::uint64_t seed) {
    const SymbolDataset clean = sample(p0, m, seed);
    return g1(train, clean);
  };
}

Type3Detector adapt_type3_from_type2(Type2Detector g2) {
  return [g2 = std::move(g2)](const SymbolDataset& train, const DistributionPair& pair,
                              std::uint64_t seed) { return g2(train, pair.p0, seed); };
}

double ood_risk_exact(const std::function<Verdict(Symbol)>& f, const Categorical& p0,
                      const Categorical& pb) {
  if (p0.size() != pb.size()) throw DimensionError("alphabet size mismatch");
  double false_alarm = 0.0;
  double miss = 0.0;
  for (std::size_t x = 0; x < p0.size(); ++x) {
    if (f(static_cast<Symbol>(x)) == Verdict::kBackdoored) {
      false_alarm += p0[x];
    } else {
      miss += pb[x];
    }
  }
  return 0.5 * false_alarm + 0.5 * miss;
}

std::function<Verdict(Symbol)> bayes_sample_rule(const Categorical& p0, const Categorical& pb) {
  if (p0.size() != pb.size()) throw DimensionError("alphabet size mismatch");
  return [p0, pb](Symbol x) { return verdict_from(pb[x] > p0[x]); };
}

}  // namespace bdfeas
