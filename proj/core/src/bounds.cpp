#include "bdfeas/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdfeas/error.hpp"

namespace bdfeas {

namespace {

// N_min for log-ratio a > 0 and scaled alphabet bk = beta |X|, in the
// cancellation-free form (bk - 1) a / (a/2 + sqrt(a^2/4 + (bk - 1) a)).
LogNumber min_n_from_log_ratio(double a, const LogNumber& bk) {
  const LogNumber one = LogNumber::one();
  if (!(a > 0.0) || bk <= one) return LogNumber::zero();
  const LogNumber a_ln = LogNumber::from_value(a);
  const LogNumber numerator = (bk - one) * a_ln;
  const LogNumber quarter_a2 = LogNumber::from_value(a * a / 4.0);
  const LogNumber root = (quarter_a2 + numerator).sqrt();
  return numerator / (LogNumber::from_value(a / 2.0) + root);
}

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
}

}  // namespace

SbdBound sbd_min_n(double alpha, double beta, double r, const LogNumber& alphabet_size) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(r > 0.0 && r <= 0.5)) throw ParameterError("r must lie in (0, 1/2]");
  check_beta(beta);
  SbdBound out;
  out.infinite_alphabet_feasible = alpha >= r;
  const double a = std::log(r / alpha);
  out.min_n = min_n_from_log_ratio(a, LogNumber::from_value(beta) * alphabet_size);
  return out;
}

LogNumber impossibility_min_n(double alpha, double beta, const LogNumber& alphabet_size) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ParameterError("alpha must lie in (0, 1/2]");
  return sbd_min_n(alpha, beta, 0.5, alphabet_size).min_n;
}

double achievability_alpha_bound(std::uint64_t n, double gamma, double beta, std::uint64_t k) {
  if (n == 0 || k == 0) throw ParameterError("n and k must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  check_beta(beta);
  const double kd = static_cast<double>(k);
  const double sep = gamma * (1.0 - beta);
  return 2.0 * kd * std::exp(-2.0 * static_cast<double>(n) * sep * sep / (kd * kd));
}

double type3_risk_floor(double gamma, std::uint64_t n, double tv) {
  if (!(tv >= 0.0 && tv <= 1.0)) throw ParameterError("tv must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  return std::max(0.0, 0.5 - gamma * static_cast<double>(n) * tv / 2.0);
}

double exact_type3_risk(const DistributionPair& pair, std::size_t n, std::uint64_t cap) {
  return 0.5 - 0.5 * product_tv_exact(pair.p0, mix(pair), n, cap);
}

LogNumber alphabet_log10(const DatasetSpec& spec) {
  struct Visitor {
    LogNumber operator()(const ImageDims& d) const {
      if (d.width == 0 || d.height == 0 || d.channels == 0 || d.color_depth == 0) {
        throw ParameterError("image dimensions must be >= 1");
      }
      const double pixels = static_cast<double>(d.width) * static_cast<double>(d.height) *
                            static_cast<double>(d.channels);
      return LogNumber::from_log10(pixels * std::log10(static_cast<double>(d.color_depth)));
    }
    LogNumber operator()(const FeatureCardinalities& f) const {
      double total = 0.0;
      for (auto c : f.cardinalities) {
        if (c == 0) throw ParameterError("feature cardinalities must be >= 1");
        total += std::log10(static_cast<double>(c));
      }
      return LogNumber::from_log10(total);
    }
    LogNumber operator()(const DirectLog10& d) const {
      if (!(d.log10_alphabet >= 0.0)) throw ParameterError("log10 alphabet size must be >= 0");
      return LogNumber::from_log10(d.log10_alphabet);
    }
  };
  return std::visit(Visitor{}, spec.alphabet);
}

std::int64_t min_n_exponent(const LogNumber& min_n) {
  if (min_n.is_zero() || min_n.log10() < 0.0) return 0;
  return static_cast<std::int64_t>(std::floor(min_n.log10()));
}

std::vector<BoundReport> table2_report(double alpha, double beta,
                                       const std::vector<DatasetSpec>& catalog) {
  std::vector<BoundReport> rows;
  rows.reserve(catalog.size());
  for (const auto& spec : catalog) {
    BoundReport row;
    row.name = spec.name;
    const LogNumber alphabet = alphabet_log10(spec);
    row.log10_alphabet = alphabet.log10();
    row.min_n = impossibility_min_n(alpha, beta, alphabet);
    row.exponent = min_n_exponent(row.min_n);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DatasetSpec> default_catalog() {
  return {
      {"Lisa Traffic Sign", ImageDims{640, 480, 1, 256}},
      {"ImageNet", ImageDims{224, 224, 3, 256}},
      {"CIFAR10", ImageDims{32, 32, 3, 256}},
      {"MNIST", ImageDims{28, 28, 1, 256}},
      {"B/W MNIST", ImageDims{28, 28, 1, 2}},
      {"Adult", DirectLog10{21.86}},
      {"Heart Disease", DirectLog10{13.51}},
      {"Iris", DirectLog10{6.35}},
  };
}

DistributionPair example_ineq_pair(double gamma, std::uint64_t n, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in (0, 1]");
  if (n == 0) throw ParameterError("n must be >= 1");
  const double top = std::floor(gamma * static_cast<double>(n) / (2.0 * epsilon));
  if (top < 1.0) throw ParameterError("construction needs a support of at least 2 symbols");
  if (top > 1e8) throw ResourceError("construction support exceeds 1e8 symbols");
  const auto m = static_cast<std::size_t>(top);

  std::vector<double> p0(m + 1, 1.0 / static_cast<double>(m + 1));
  std::vector<double> pb(m + 1, 1.0 / static_cast<double>(m));
  pb[0] = 0.0;
  Categorical clean(std::move(p0));
  Categorical backdoor(std::move(pb));
  const double tv = tv_distance(clean, backdoor);
  if (tv > 2.0 * epsilon / (gamma * static_cast<double>(n)) + kProbTolerance) {
    throw Error("near-indistinguishable construction violated its TV bound");
  }
  return DistributionPair(std::move(clean), std::move(backdoor), gamma, 1.0 - tv);
}

}  // namespace bdfeas
