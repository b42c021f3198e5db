#include "bdfeas/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bdfeas/error.hpp"

namespace bdfeas {

double ks_statistic(std::span<const double> sorted_values,
                    const std::function<double(double)>& cdf) {
  if (sorted_values.empty()) throw ParameterError("KS statistic needs at least one value");
  const double n = static_cast<double>(sorted_values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    const double f = cdf(sorted_values[i]);
    const double upper = static_cast<double>(i + 1) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    d = std::max({d, upper, lower});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_pvalue(double statistic, std::size_t n) {
  if (n == 0) throw ParameterError("KS p-value needs n >= 1");
  if (!(statistic >= 0.0)) throw ParameterError("KS statistic must be nonnegative");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double lambda = (root_n + 0.12 + 0.11 / root_n) * statistic;
  if (lambda == 0.0) return 1.0;

  constexpr double kTermFloor = 1e-10;
  if (lambda < 1.0) {
    // Same function via the Jacobi theta identity:
    //   1 - sqrt(2 pi) / lambda * sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
    // The alternating form needs ~1/lambda terms here and loses monotonicity
    // to cancellation as lambda -> 0.
    const double b = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1;; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(b * odd * odd);
      cdf += term;
      if (term < kTermFloor * 1e-6 || term == 0.0) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }

  const double a = -2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(a * static_cast<double>(k) * static_cast<double>(k));
    sum += sign * term;
    if (term < kTermFloor) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> values, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  KsResult r;
  r.n = sorted.size();
  r.statistic = ks_statistic(sorted, cdf);
  r.p_value = ks_pvalue(r.statistic, r.n);
  return r;
}

double normal_cdf(double x, double mean, double sd) {
  if (sd == 0.0) return x < mean ? 0.0 : 1.0;
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

}  // namespace bdfeas
