#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bdfeas/categorical.hpp"
#include "bdfeas/detectors.hpp"
#include "bdfeas/rng.hpp"

namespace bdfeas {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

/// Monte-Carlo error probability with a Wilson score interval.
struct RiskEstimate {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::size_t trials = 0;
  std::size_t errors = 0;

  double ci_width() const noexcept { return ci_high - ci_low; }
  bool covers(double x) const noexcept { return ci_low <= x && x <= ci_high; }

  friend bool operator==(const RiskEstimate&, const RiskEstimate&) = default;
};

RiskEstimate wilson_interval(std::size_t errors, std::size_t trials, double z = kZ99);

/// Pr{g != 0 | J = 0} and Pr{g != 1 | J = 1}.
struct ConditionalErrors {
  RiskEstimate false_backdoor;
  RiskEstimate missed_backdoor;
};

/// Additive-smoothing trainer: theta(x) = (count(x) + c) / (N + c K).
struct TrainerStub {
  double smoothing = 1.0;
  Parameters operator()(const SymbolDataset& d) const;
};

using Detector = std::variant<Type0Detector, Type1Detector, Type2Detector, Type3Detector>;

/// One backdoor-detection instance: the pair, N training samples, M clean
/// validation samples (M defaults to N) and the training algorithm.
struct RiskProblem {
  RiskProblem(DistributionPair pair, std::size_t n, std::size_t m = 0,
              Trainer trainer = TrainerStub{});

  DistributionPair pair;
  std::size_t n;
  std::size_t m;
  Trainer trainer;
};

// Generic trial machinery. A trial draws J ~ Bernoulli(1/2), draws a dataset
// from the J-indexed source, and scores the decision against J. Every random
// quantity in trial t derives from derive_seed(seed, t), so results do not
// depend on the number of worker threads.

using DatasetSource = std::function<SymbolDataset(std::uint64_t seed)>;
using DatasetDecision = std::function<Verdict(const SymbolDataset& train, std::uint64_t seed)>;

/// Minimum trial count accepted by the estimators.
inline constexpr std::size_t kMinTrials = 100;

RiskEstimate monte_carlo_risk(const DatasetSource& clean, const DatasetSource& backdoored,
                              const DatasetDecision& decide, std::size_t trials,
                              std::uint64_t seed, unsigned threads = 0);

/// Runs `trials` trials in each branch with J held fixed.
ConditionalErrors monte_carlo_conditional(const DatasetSource& clean,
                                          const DatasetSource& backdoored,
                                          const DatasetDecision& decide, std::size_t trials,
                                          std::uint64_t seed, unsigned threads = 0);

/// Runs fn(t) for t in [0, trials) on up to `threads` workers (0 = hardware
/// concurrency) and returns the per-trial results in index order.
std::vector<std::uint8_t> run_trials(std::size_t trials, unsigned threads,
                                     const std::function<std::uint8_t(std::size_t)>& fn);

RiskEstimate estimate_risk(const Detector& detector, const RiskProblem& problem,
                           std::size_t trials, std::uint64_t seed, unsigned threads = 0);
RiskEstimate estimate_risk(const Detector& detector, const DistributionPair& pair, std::size_t n,
                           std::size_t trials, std::uint64_t seed);

ConditionalErrors estimate_conditional_errors(const Detector& detector,
                                              const RiskProblem& problem, std::size_t trials,
                                              std::uint64_t seed, unsigned threads = 0);

/// Type-0 risk on trained parameters; same estimator as estimate_risk.
RiskEstimate type0_demo_risk(const Type0Detector& detector0, const RiskProblem& problem,
                             std::size_t trials, std::uint64_t seed, unsigned threads = 0);

// Generalized (model / sample / OOD) detection.

enum class Flavor { kMbd, kSbd, kOod };

/// t(j, i): j for model backdoor detection, i for the sample and OOD flavors.
int target(Flavor flavor, int j, int i);

std::string to_string(Flavor flavor);
Flavor flavor_from_string(const std::string& s);

/// Distribution of (J, I) on {0,1}^2.
class JointPrior {
 public:
  /// Cells in order (0,0), (0,1), (1,0), (1,1).
  explicit JointPrior(std::array<double, 4> cells);

  /// Uniform over the cells the flavor allows.
  static JointPrior default_for(Flavor flavor);

  double cell(int j, int i) const noexcept { return cells_[static_cast<std::size_t>(2 * j + i)]; }
  const std::array<double, 4>& cells() const noexcept { return cells_; }

  /// Throws ConfigError when the prior puts mass on a cell the flavor excludes.
  void check_flavor(Flavor flavor) const;

  std::pair<int, int> draw(CounterRng& rng) const;

 private:
  std::array<double, 4> cells_;
};

/// g'(theta, D', x): trained parameters, clean samples and the probe sample.
using SampleDetector =
    std::function<Verdict(const Parameters& theta, const SymbolDataset& clean, Symbol probe)>;

/// Risk Pr{g'(A(D^(J)), D', X^(I)) != t(J, I)} with X^(0) ~ p0, X^(1) ~ pb.
/// When `cell_counts` is given it receives how often each (j, i) was drawn.
RiskEstimate estimate_generalized_risk(const SampleDetector& detector,
                                       const RiskProblem& problem, const JointPrior& prior,
                                       Flavor flavor, std::size_t trials, std::uint64_t seed,
                                       unsigned threads = 0,
                                       std::array<std::size_t, 4>* cell_counts = nullptr);

// Detector ladder: risks of Type 0..3 detectors on one instance, including the
// reduction adapters, to exhibit the ordering Type 0 >= Type 1 >= Type 2 >= Type 3.

struct LadderEntry {
  std::string name;
  int level = 0;
  /// Name of the detector this one was adapted from; empty for native ones.
  std::string source;
  RiskEstimate risk;
};

struct DetectorLadder {
  std::vector<LadderEntry> entries;

  /// Entry with the smallest p_hat at `level`.
  const LadderEntry& best(int level) const;
  const LadderEntry& find(const std::string& name) const;
};

DetectorLadder run_detector_ladder(const RiskProblem& problem, std::size_t trials,
                                   std::uint64_t seed, unsigned threads = 0);

}  // namespace bdfeas
