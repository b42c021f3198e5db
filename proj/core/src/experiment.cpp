#include "bdfeas/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "bdfeas/detectors.hpp"
#include "bdfeas/error.hpp"

namespace bdfeas {

namespace {

bool is_mbd_detector(const std::string& id) {
  return id == "np" || id == "type2-tv" || id == "type1-tv" || id == "type0-tv";
}

}  // namespace

DistributionPair benchmark_pair(std::size_t k, double gamma) {
  if (k < 2) throw ParameterError("benchmark pair needs k >= 2");
  const auto p0 = Categorical::uniform(k);
  const auto pb = Categorical::point_mass(k, 0);
  return DistributionPair(p0, pb, gamma, 1.0 - tv_distance(p0, pb));
}

DistributionPair ExperimentConfig::resolved_pair() const {
  DistributionPair p = pair ? *pair : benchmark_pair(k, gamma);
  if (beta) p = DistributionPair(p.p0, p.pb, p.gamma, *beta);
  return p;
}

void ExperimentConfig::validate() const {
  if (trials < kMinTrials) throw ParameterError("trials must be at least 100");
  if (n == 0) throw ParameterError("n must be positive");
  if (flavor == Flavor::kMbd) {
    if (!is_mbd_detector(detector))
      throw ConfigError("detector '" + detector + "' is not a model-backdoor detector");
  } else if (detector != "bayes-sample") {
    throw ConfigError("flavor " + to_string(flavor) + " needs detector 'bayes-sample'");
  }
  (void)resolved_pair();
}

json experiment_to_json(const ExperimentConfig& c) {
  json j{{"detector", c.detector}, {"k", c.k},         {"n", c.n},
         {"m", c.m},               {"gamma", c.gamma}, {"trials", c.trials},
         {"seed", c.seed},         {"flavor", to_string(c.flavor)}};
  j["pair"] = c.pair ? json(*c.pair) : json(nullptr);
  j["beta"] = c.beta ? json(*c.beta) : json(nullptr);
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const char* const kKnown[] = {"detector", "pair", "k",      "n",     "m",
                                       "gamma",    "beta", "trials", "seed",  "flavor"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ConfigError("unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("detector")) c.detector = j.at("detector").get<std::string>();
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("m")) c.m = j.at("m").get<std::size_t>();
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("beta") && !j.at("beta").is_null()) c.beta = j.at("beta").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("flavor")) c.flavor = flavor_from_string(j.at("flavor").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  if (j.contains("pair") && !j.at("pair").is_null()) c.pair = pair_from_json(j.at("pair"));
  return c;
}

RiskEstimate run_experiment(const ExperimentConfig& c, unsigned threads) {
  c.validate();
  const DistributionPair pair = c.resolved_pair();
  const RiskProblem problem(pair, c.n, c.m);
  if (c.flavor != Flavor::kMbd) {
    const auto rule = bayes_sample_rule(pair.p0, pair.pb);
    const SampleDetector g = [rule](const Parameters&, const SymbolDataset&, Symbol x) {
      return rule(x);
    };
    return estimate_generalized_risk(g, problem, JointPrior::default_for(c.flavor), c.flavor,
                                     c.trials, c.seed, threads);
  }
  Detector g;
  if (c.detector == "np") {
    g = make_np_detector();
  } else if (c.detector == "type2-tv") {
    g = make_type2_tv(pair.gamma, pair.beta);
  } else if (c.detector == "type1-tv") {
    g = make_type1_tv(pair.gamma, pair.beta);
  } else {
    g = make_type0_tv(pair.gamma, pair.beta);
  }
  return estimate_risk(g, problem, c.trials, c.seed, threads);
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const json& j) { return fnv1a_hex(j.dump()); }

json make_output_record(const std::string& command, const json& config, const json& payload) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  json keyed{{"command", command}, {"config", config}};
  return json{{"command", command},
              {"config", config},
              {"config_hash", config_hash(keyed)},
              {"timestamp", stamp},
              {"payload", payload}};
}

bool append_record(const std::string& path, const json& record) {
  const auto hash = record.at("config_hash").get<std::string>();
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json existing = json::parse(line, nullptr, false);
      if (!existing.is_discarded() && existing.is_object() && existing.value("config_hash", "") == hash)
        return false;
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError("cannot open results file '" + path + "'");
  out << record.dump() << '\n';
  if (!out) throw ConfigError("failed writing results file '" + path + "'");
  return true;
}

}  // namespace bdfeas
