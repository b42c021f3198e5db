#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bdfeas/categorical.hpp"
#include "bdfeas/log_number.hpp"

namespace bdfeas {

/// |X| = depth^(width * height * channels).
struct ImageDims {
  std::uint64_t width = 1;
  std::uint64_t height = 1;
  std::uint64_t channels = 1;
  std::uint64_t color_depth = 2;
};

/// |X| = product of per-feature category counts.
struct FeatureCardinalities {
  std::vector<std::uint64_t> cardinalities;
};

/// |X| given directly as log10.
struct DirectLog10 {
  double log10_alphabet = 0.0;
};

struct DatasetSpec {
  std::string name;
  std::variant<ImageDims, FeatureCardinalities, DirectLog10> alphabet;
};

struct BoundReport {
  std::string name;
  double log10_alphabet = 0.0;
  LogNumber min_n;
  /// floor(log10 N_min), or 0 when N_min < 1.
  std::int64_t exponent = 0;
};

/// Minimum training-set size N for which alpha-error Type-2 detection is not
/// ruled out on an alphabet of size |X|:
///   N >= ln(2a)/2 + sqrt(ln(2a)^2/4 + (beta |X| - 1) ln(1/(2a))).
/// Zero when alpha = 1/2 or beta |X| <= 1.
LogNumber impossibility_min_n(double alpha, double beta, const LogNumber& alphabet_size);

/// Threshold 2K exp(-2 N gamma^2 (1-beta)^2 / K^2); any alpha strictly above
/// it is attained by the type-TV detector.
double achievability_alpha_bound(std::uint64_t n, double gamma, double beta, std::uint64_t k);

/// max(0, 1/2 - gamma n tv / 2): risk floor of every Type-3 detector.
double type3_risk_floor(double gamma, std::uint64_t n, double tv);

/// 1/2 - 1/2 TV(P0^n, P1^n), the risk of the Neyman-Pearson detector.
double exact_type3_risk(const DistributionPair& pair, std::size_t n,
                        std::uint64_t cap = kDefaultEnumerationCap);

struct SbdBound {
  LogNumber min_n;
  /// alpha >= r: the only condition that survives an infinite alphabet.
  bool infinite_alphabet_feasible = false;
};

/// Sample-backdoor analogue of impossibility_min_n, with ln(2 alpha) replaced
/// by ln(alpha / r) where r = min{P_JI(0,0), P_JI(1,1)}.
SbdBound sbd_min_n(double alpha, double beta, double r, const LogNumber& alphabet_size);

LogNumber alphabet_log10(const DatasetSpec& spec);

/// Floor of log10, with N < 1 mapped to exponent 0.
std::int64_t min_n_exponent(const LogNumber& min_n);

std::vector<BoundReport> table2_report(double alpha, double beta,
                                       const std::vector<DatasetSpec>& catalog);

/// The eight image and tabular datasets evaluated in the feasibility table.
std::vector<DatasetSpec> default_catalog();

/// Uniform pair on {0..m} vs {1..m}, m = floor(gamma n / (2 epsilon)), so
/// that TV = 1/(m+1) <= 2 epsilon / (gamma n). beta is set to 1 - TV.
DistributionPair example_ineq_pair(double gamma, std::uint64_t n, double epsilon);

}  // namespace bdfeas
