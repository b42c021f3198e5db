#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bdfeas {

/// One-sample Kolmogorov-Smirnov result.
struct KsResult {
  double statistic = 0.0;  ///< sup-norm gap D_n between empirical and reference CDF
  double p_value = 1.0;    ///< asymptotic Kolmogorov p-value
  std::size_t n = 0;
};

/// D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over sorted values.
double ks_statistic(std::span<const double> sorted_values,
                    const std::function<double(double)>& cdf);

/// Asymptotic p-value 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2) with
/// lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) D_n, clamped to [0, 1].
double ks_pvalue(double statistic, std::size_t n);

/// Sorts a copy of `values` and runs the full test.
KsResult ks_test(std::span<const double> values, const std::function<double(double)>& cdf);

double normal_cdf(double x, double mean, double sd);

}  // namespace bdfeas
