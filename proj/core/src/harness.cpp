#include "bdfeas/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bdfeas/error.hpp"

namespace bdfeas {

RiskEstimate wilson_interval(std::size_t errors, std::size_t trials, double z) {
  if (trials == 0) throw ParameterError("Wilson interval needs at least one trial");
  if (errors > trials) throw ParameterError("more errors than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

  RiskEstimate r;
  r.p_hat = p;
  r.trials = trials;
  r.errors = errors;
  r.ci_low = std::min(p, std::max(0.0, center - half));
  r.ci_high = std::max(p, std::min(1.0, center + half));
  return r;
}

Parameters TrainerStub::operator()(const SymbolDataset& d) const {
  const EmpiricalType s = empirical_type(d);
  const double denom =
      static_cast<double>(d.size()) + smoothing * static_cast<double>(d.alphabet_size());
  Parameters theta(d.alphabet_size());
  for (std::size_t x = 0; x < theta.size(); ++x) {
    theta[x] = (static_cast<double>(s.counts()[x]) + smoothing) / denom;
  }
  return theta;
}

RiskProblem::RiskProblem(DistributionPair pair_in, std::size_t n_in, std::size_t m_in,
                         Trainer trainer_in)
    : pair(std::move(pair_in)), n(n_in), m(m_in == 0 ? n_in : m_in), trainer(std::move(trainer_in)) {
  if (n == 0) throw ParameterError("training-set size n must be >= 1");
  if (!trainer) throw ParameterError("risk problem needs a trainer");
}

std::vector<std::uint8_t> run_trials(std::size_t trials, unsigned threads,
                                     const std::function<std::uint8_t(std::size_t)>& fn) {
  std::vector<std::uint8_t> out(trials, 0);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, trials)));

  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
    return out;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(trials, begin + chunk);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t t = begin; t < end; ++t) out[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

void check_trials(std::size_t trials) {
  if (trials < kMinTrials) {
    throw ParameterError("at least " + std::to_string(kMinTrials) + " trials are required");
  }
}

std::size_t count_errors(const std::vector<std::uint8_t>& flags) {
  std::size_t errors = 0;
  for (auto f : flags) errors += f;
  return errors;
}

// Stream indices inside one trial.
constexpr std::uint64_t kStreamHypothesis = 0;
constexpr std::uint64_t kStreamDataset = 1;
constexpr std::uint64_t kStreamDetector = 2;
constexpr std::uint64_t kStreamClean = 3;
constexpr std::uint64_t kStreamProbe = 4;

DatasetDecision to_decision(const Detector& detector, const RiskProblem& problem) {
  const DistributionPair& pair = problem.pair;
  const std::size_t m = problem.m;
  return std::visit(
      [&](const auto& g) -> DatasetDecision {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Type3Detector>) {
          return [&g, &pair](const SymbolDataset& d, std::uint64_t s) { return g(d, pair, s); };
        } else if constexpr (std::is_same_v<G, Type2Detector>) {
          return [&g, &pair](const SymbolDataset& d, std::uint64_t s) {
            return g(d, pair.p0, s);
          };
        } else if constexpr (std::is_same_v<G, Type1Detector>) {
          return [&g, &pair, m](const SymbolDataset& d, std::uint64_t s) {
            return g(d, sample(pair.p0, m, derive_seed(s, kStreamClean)));
          };
        } else {
          const Trainer& trainer = problem.trainer;
          return [&g, &pair, &trainer, m](const SymbolDataset& d, std::uint64_t s) {
            return g(trainer(d), sample(pair.p0, m, derive_seed(s, kStreamClean)));
          };
        }
      },
      detector);
}

}  // namespace

RiskEstimate monte_carlo_risk(const DatasetSource& clean, const DatasetSource& backdoored,
                              const DatasetDecision& decide, std::size_t trials,
                              std::uint64_t seed, unsigned threads) {
  check_trials(trials);
  const auto flags = run_trials(trials, threads, [&](std::size_t t) -> std::uint8_t {
    const std::uint64_t ts = derive_seed(seed, t);
    CounterRng hypothesis(derive_seed(ts, kStreamHypothesis));
    const bool j = hypothesis.bernoulli(0.5);
    const SymbolDataset d = (j ? backdoored : clean)(derive_seed(ts, kStreamDataset));
    const Verdict v = decide(d, derive_seed(ts, kStreamDetector));
    return static_cast<std::uint8_t>(v != verdict_from(j));
  });
  return wilson_interval(count_errors(flags), trials);
}

ConditionalErrors monte_carlo_conditional(const DatasetSource& clean,
                                          const DatasetSource& backdoored,
                                          const DatasetDecision& decide, std::size_t trials,
                                          std::uint64_t seed, unsigned threads) {
  check_trials(trials);
  auto branch = [&](bool j) {
    const std::uint64_t branch_seed = derive_seed(seed, j ? 0xb1 : 0xb0);
    const auto flags = run_trials(trials, threads, [&](std::size_t t) -> std::uint8_t {
      const std::uint64_t ts = derive_seed(branch_seed, t);
      const SymbolDataset d = (j ? backdoored : clean)(derive_seed(ts, kStreamDataset));
      return static_cast<std::uint8_t>(decide(d, derive_seed(ts, kStreamDetector)) !=
                                       verdict_from(j));
    });
    return wilson_interval(count_errors(flags), trials);
  };
  return ConditionalErrors{branch(false), branch(true)};
}

RiskEstimate estimate_risk(const Detector& detector, const RiskProblem& problem,
                           std::size_t trials, std::uint64_t seed, unsigned threads) {
  const Categorical p1 = mix(problem.pair);
  const std::size_t n = problem.n;
  const DatasetSource clean = [&](std::uint64_t s) { return sample(problem.pair.p0, n, s); };
  const DatasetSource backdoored = [&](std::uint64_t s) { return sample(p1, n, s); };
  return monte_carlo_risk(clean, backdoored, to_decision(detector, problem), trials, seed,
                          threads);
}

RiskEstimate estimate_risk(const Detector& detector, const DistributionPair& pair, std::size_t n,
                           std::size_t trials, std::uint64_t seed) {
  return estimate_risk(detector, RiskProblem(pair, n), trials, seed);
}

ConditionalErrors estimate_conditional_errors(const Detector& detector,
                                              const RiskProblem& problem, std::size_t trials,
                                              std::uint64_t seed, unsigned threads) {
  const Categorical p1 = mix(problem.pair);
  const std::size_t n = problem.n;
  const DatasetSource clean = [&](std::uint64_t s) { return sample(problem.pair.p0, n, s); };
  const DatasetSource backdoored = [&](std::uint64_t s) { return sample(p1, n, s); };
  return monte_carlo_conditional(clean, backdoored, to_decision(detector, problem), trials, seed,
                                 threads);
}

RiskEstimate type0_demo_risk(const Type0Detector& detector0, const RiskProblem& problem,
                             std::size_t trials, std::uint64_t seed, unsigned threads) {
  return estimate_risk(Detector{detector0}, problem, trials, seed, threads);
}

int target(Flavor flavor, int j, int i) {
  switch (flavor) {
    case Flavor::kMbd:
      return j;
    case Flavor::kSbd:
    case Flavor::kOod:
      return i;
  }
  return j;
}

std::string to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::kMbd:
      return "mbd";
    case Flavor::kSbd:
      return "sbd";
    case Flavor::kOod:
      return "ood";
  }
  return "mbd";
}

Flavor flavor_from_string(const std::string& s) {
  if (s == "mbd") return Flavor::kMbd;
  if (s == "sbd") return Flavor::kSbd;
  if (s == "ood") return Flavor::kOod;
  throw ConfigError("unknown flavor '" + s + "' (expected mbd, sbd or ood)");
}

JointPrior::JointPrior(std::array<double, 4> cells) : cells_(cells) {
  double total = 0.0;
  for (double c : cells_) {
    if (!(c >= 0.0)) throw ParameterError("joint prior cells must be nonnegative");
    total += c;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw ParameterError("joint prior cells must sum to 1");
  }
}

JointPrior JointPrior::default_for(Flavor flavor) {
  switch (flavor) {
    case Flavor::kMbd:
      return JointPrior({0.5, 0.0, 0.5, 0.0});
    case Flavor::kSbd:
      return JointPrior({0.5, 0.0, 0.0, 0.5});
    case Flavor::kOod:
      return JointPrior({0.5, 0.5, 0.0, 0.0});
  }
  return JointPrior({0.5, 0.0, 0.5, 0.0});
}

void JointPrior::check_flavor(Flavor flavor) const {
  switch (flavor) {
    case Flavor::kMbd:
      return;
    case Flavor::kSbd:
      if (cell(0, 1) != 0.0) {
        throw ConfigError("sample backdoor detection requires P_JI(0,1) = 0");
      }
      return;
    case Flavor::kOod:
      if (cell(1, 0) != 0.0 || cell(1, 1) != 0.0) {
        throw ConfigError("OOD detection requires P_JI(1,0) = P_JI(1,1) = 0");
      }
      return;
  }
}

std::pair<int, int> JointPrior::draw(CounterRng& rng) const {
  const double u = rng.uniform01();
  double acc = 0.0;
  int last = 0;
  for (int c = 0; c < 4; ++c) {
    if (cells_[static_cast<std::size_t>(c)] == 0.0) continue;
    acc += cells_[static_cast<std::size_t>(c)];
    last = c;
    if (u < acc) return {c / 2, c % 2};
  }
  return {last / 2, last % 2};
}

RiskEstimate estimate_generalized_risk(const SampleDetector& detector,
                                       const RiskProblem& problem, const JointPrior& prior,
                                       Flavor flavor, std::size_t trials, std::uint64_t seed,
                                       unsigned threads, std::array<std::size_t, 4>* cell_counts) {
  check_trials(trials);
  prior.check_flavor(flavor);
  const DistributionPair& pair = problem.pair;
  const Categorical p1 = mix(pair);

  std::vector<std::uint8_t> cells(trials, 0);
  const auto flags = run_trials(trials, threads, [&](std::size_t t) -> std::uint8_t {
    const std::uint64_t ts = derive_seed(seed, t);
    CounterRng hypothesis(derive_seed(ts, kStreamHypothesis));
    const auto [j, i] = prior.draw(hypothesis);
    cells[t] = static_cast<std::uint8_t>(2 * j + i);

    const SymbolDataset train = sample(j ? p1 : pair.p0, problem.n, derive_seed(ts, kStreamDataset));
    const Parameters theta = problem.trainer(train);
    const SymbolDataset clean = sample(pair.p0, problem.m, derive_seed(ts, kStreamClean));
    CounterRng probe_rng(derive_seed(ts, kStreamProbe));
    const Symbol probe = (i ? pair.pb : pair.p0).draw(probe_rng);

    const Verdict v = detector(theta, clean, probe);
    return static_cast<std::uint8_t>(to_int(v) != target(flavor, j, i));
  });

  if (cell_counts != nullptr) {
    cell_counts->fill(0);
    for (auto c : cells) ++(*cell_counts)[c];
  }
  return wilson_interval(count_errors(flags), trials);
}

const LadderEntry& DetectorLadder::best(int level) const {
  const LadderEntry* best = nullptr;
  for (const auto& e : entries) {
    if (e.level == level && (best == nullptr || e.risk.p_hat < best->risk.p_hat)) best = &e;
  }
  if (best == nullptr) throw ParameterError("no detector at level " + std::to_string(level));
  return *best;
}

const LadderEntry& DetectorLadder::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw ParameterError("no detector named " + name);
}

DetectorLadder run_detector_ladder(const RiskProblem& problem, std::size_t trials,
                                   std::uint64_t seed, unsigned threads) {
  const double gamma = problem.pair.gamma;
  const double beta = problem.pair.beta;
  const Type0Detector g0 = make_type0_tv(gamma, beta);
  const Type1Detector g1 = make_type1_tv(gamma, beta);
  const Type2Detector g2 = make_type2_tv(gamma, beta);

  struct Candidate {
    std::string name;
    int level;
    std::string source;
    Detector detector;
  };
  const std::vector<Candidate> candidates = {
      {"type0-tv", 0, "", g0},
      {"type1-tv", 1, "", g1},
      {"type1<-type0-tv", 1, "type0-tv", adapt_type1_from_type0(g0, problem.trainer)},
      {"type2-tv", 2, "", g2},
      {"type2<-type1-tv", 2, "type1-tv", adapt_type2_from_type1(g1, problem.m)},
      {"np", 3, "", make_np_detector()},
      {"type3<-type2-tv", 3, "type2-tv", adapt_type3_from_type2(g2)},
  };

  DetectorLadder ladder;
  for (const auto& c : candidates) {
    // Common random numbers: every candidate sees the same J and datasets.
    ladder.entries.push_back(
        {c.name, c.level, c.source, estimate_risk(c.detector, problem, trials, seed, threads)});
  }
  return ladder;
}

}  // namespace bdfeas
