#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bdfeas/ks.hpp"

namespace bdfeas {

/// Labeled sample X = (Y, Z) of the Gaussian toy problem.
struct LabeledSample {
  int y = 1;  ///< -1 or +1
  std::vector<double> z;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

/// Backdoor shift Delta = 2 / sqrt(K - mu^2) (1 - mu v) - 2 mu v for a unit
/// vector v with mu = v . 1. Satisfies v . Delta = -2 mu.
std::vector<double> toy_delta(std::span<const double> v);

/// Gaussian toy problem: Z = Y 1 + sigma W with W ~ N(0, I_K), Y uniform on
/// {-1, +1}, and a defender projecting onto the unit vector v.
class ToyConfig {
 public:
  ToyConfig(std::vector<double> v, double sigma, double gamma, std::size_t n);

  /// Normalizes `v` first; `was_normalized` reports whether it was off unit length.
  static ToyConfig with_direction(std::vector<double> v, double sigma, double gamma,
                                  std::size_t n, bool* was_normalized = nullptr);

  std::size_t dims() const noexcept { return v_.size(); }
  const std::vector<double>& v() const noexcept { return v_; }
  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t n() const noexcept { return n_; }
  double mu() const noexcept { return mu_; }
  const std::vector<double>& delta() const noexcept { return delta_; }

  /// Same geometry, different poisoning rate.
  ToyConfig with_gamma(double gamma) const;

 private:
  std::vector<double> v_;
  double sigma_;
  double gamma_;
  std::size_t n_;
  double mu_;
  std::vector<double> delta_;
};

std::vector<LabeledSample> toy_sample_clean(const ToyConfig& config, std::size_t n,
                                            std::uint64_t seed);

/// b(x) = (z + y Delta, -y).
LabeledSample toy_backdoor(const LabeledSample& s, const ToyConfig& config);

/// Replaces each sample independently with its backdoored version with
/// probability gamma.
std::vector<LabeledSample> toy_poison(const std::vector<LabeledSample>& clean, double gamma,
                                      const ToyConfig& config, std::uint64_t seed);

/// Detector statistic f(X) = v . (y z).
double toy_projection(const LabeledSample& s, std::span<const double> v);

/// One-sample KS test of the projections against Normal(mu, sigma^2).
KsResult toy_ks_defense(const std::vector<LabeledSample>& data, const ToyConfig& config);

struct LinearClassifier {
  std::vector<double> w;
  double b = 0.0;

  int predict(std::span<const double> z) const;
  double accuracy(const std::vector<LabeledSample>& data) const;
};

/// Least-squares fit of y on (z, 1); predicts sign(w . z + b).
LinearClassifier toy_train_classifier(const std::vector<LabeledSample>& data);

struct ToyReport {
  double p_value = 1.0;
  double ks_statistic = 0.0;
  double clean_accuracy = 0.0;
  double attack_success_rate = 0.0;
};

/// Everything one pipeline run produced, kept for plotting.
struct ToyRun {
  std::vector<LabeledSample> clean;
  std::vector<LabeledSample> poisoned;
  LinearClassifier clean_model;
  LinearClassifier poisoned_model;
  ToyReport report;
};

inline constexpr std::size_t kToyEvalSamples = 2000;

/// Sample N clean points, poison at rate gamma, run the KS defense on the
/// poisoned set, train on it, then score clean accuracy and attack success
/// (fresh backdoored samples classified as their flipped label).
ToyRun toy_attack_run(const ToyConfig& config, std::uint64_t seed,
                      std::size_t eval_samples = kToyEvalSamples);
ToyReport toy_attack_report(const ToyConfig& config, std::uint64_t seed,
                            std::size_t eval_samples = kToyEvalSamples);

/// Scatter of a 2-D run with both fitted boundaries.
std::string toy_scatter_svg(const ToyRun& run, const ToyConfig& config);
/// Histogram of f(X) for the clean and poisoned sets.
std::string toy_histogram_svg(const ToyRun& run, const ToyConfig& config, std::size_t bins = 20);
/// CSV rows: set,label,z1,...,zK,projection
std::string toy_scatter_csv(const ToyRun& run, const ToyConfig& config);
/// CSV rows: bin_low,bin_high,clean_count,poisoned_count
std::string toy_histogram_csv(const ToyRun& run, const ToyConfig& config, std::size_t bins = 20);

}  // namespace bdfeas
