#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bdfeas/categorical.hpp"
#include "bdfeas/harness.hpp"
#include "bdfeas/serialize.hpp"

namespace bdfeas {

/// p0 uniform on K symbols, pb a point mass on symbol 0, beta = 1 - TV = 1/K.
DistributionPair benchmark_pair(std::size_t k, double gamma);

/// A risk experiment. When `pair` is absent the benchmark pair on `k`
/// symbols with `gamma` is used. Detector ids:
///   mbd: np, type2-tv, type1-tv, type0-tv
///   sbd, ood: bayes-sample
struct ExperimentConfig {
  std::string detector = "np";
  std::optional<DistributionPair> pair;
  std::size_t k = 2;
  std::size_t n = 2;
  std::size_t m = 0;  ///< 0 means m = n
  double gamma = 0.5;
  std::optional<double> beta;  ///< overrides the pair's beta when set
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  Flavor flavor = Flavor::kMbd;

  /// Pair the experiment runs on, after defaults and overrides.
  DistributionPair resolved_pair() const;
  /// Throws ConfigError / ParameterError on inconsistent settings.
  void validate() const;
};

json experiment_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(const json& j);

RiskEstimate run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// 64-bit FNV-1a over the bytes of `s`, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& s);

/// Hash of the canonical (key-sorted, compact) dump of a JSON document.
std::string config_hash(const json& j);

/// {"command", "config_hash", "timestamp", "payload"}; timestamp is UTC ISO 8601.
json make_output_record(const std::string& command, const json& config, const json& payload);

/// Appends `record` as one line unless a line with the same config_hash is
/// already present. Returns whether a line was written.
bool append_record(const std::string& path, const json& record);

}  // namespace bdfeas
