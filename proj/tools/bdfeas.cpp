// bdfeas: bounds, risk simulations, the toy attack and the impossibility probe.
//
// stdout carries only the payload (CSV or JSON) so repeated runs with the
// same flags are byte-identical. --out appends a timestamped record to a
// JSON-lines file.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bdfeas/bounds.hpp"
#include "bdfeas/error.hpp"
#include "bdfeas/experiment.hpp"
#include "bdfeas/impossibility.hpp"
#include "bdfeas/serialize.hpp"
#include "bdfeas/toy.hpp"

namespace {

using bdfeas::json;

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bdfeas::ConfigError("cannot read '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw bdfeas::ConfigError("'" + path + "' is not valid JSON");
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw bdfeas::ConfigError("cannot write '" + path + "'");
  out << text;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// "plots/run.svg" -> "plots/run-<tag>.svg"
std::string tagged_path(const std::string& path, const std::string& tag, const std::string& ext) {
  std::string stem = path;
  if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
    stem.resize(stem.size() - ext.size());
  return stem + "-" + tag + ext;
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw bdfeas::ParameterError("cannot parse '" + item + "' in --v");
    }
  }
  if (v.empty()) throw bdfeas::ParameterError("--v is empty");
  return v;
}

struct Common {
  std::string out;
  unsigned threads = 0;
};

void emit(const Common& common, const std::string& command, const json& config,
          const json& payload) {
  if (!common.out.empty())
    bdfeas::append_record(common.out, bdfeas::make_output_record(command, config, payload));
}

// bounds ---------------------------------------------------------------

struct BoundsArgs {
  double alpha = 0.1;
  double beta = 0.001;
  std::string catalog;
  std::string format = "csv";
};

int cmd_bounds(const BoundsArgs& a, const Common& common) {
  const auto catalog = a.catalog.empty() ? bdfeas::default_catalog()
                                         : bdfeas::catalog_from_json(read_json_file(a.catalog));
  const auto rows = bdfeas::table2_report(a.alpha, a.beta, catalog);
  const json payload = rows;
  if (a.format == "json") {
    std::cout << payload.dump(2) << '\n';
  } else {
    std::cout << "dataset,log10_alphabet,log10_min_n,exponent\n";
    std::cout.precision(10);
    for (const auto& r : rows) {
      std::cout << r.name << ',' << r.log10_alphabet << ',';
      if (!r.min_n.is_zero()) std::cout << r.min_n.log10();
      std::cout << ',' << r.exponent << '\n';
    }
  }
  emit(common, "bounds",
       json{{"alpha", a.alpha}, {"beta", a.beta}, {"catalog", a.catalog}, {"format", a.format}},
       payload);
  return 0;
}

// risk -----------------------------------------------------------------

struct RiskArgs {
  std::string detector = "np";
  std::string flavor = "mbd";
  std::size_t k = 2;
  std::size_t n = 2;
  std::size_t m = 0;
  double gamma = 0.5;
  std::optional<double> beta;
  std::string pair;
  std::string config;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool oracle = false;
};

int cmd_risk(const RiskArgs& a, const Common& common) {
  bdfeas::ExperimentConfig c;
  if (!a.config.empty()) {
    c = bdfeas::experiment_from_json(read_json_file(a.config));
  } else {
    c.detector = a.detector;
    c.flavor = bdfeas::flavor_from_string(a.flavor);
    c.k = a.k;
    c.n = a.n;
    c.m = a.m;
    c.gamma = a.gamma;
    c.beta = a.beta;
    c.trials = a.trials;
    c.seed = a.seed;
    if (!a.pair.empty()) c.pair = bdfeas::pair_from_json(read_json_file(a.pair));
  }
  c.validate();
  const auto pair = c.resolved_pair();
  const auto risk = bdfeas::run_experiment(c, common.threads);

  json payload{{"detector", c.detector},
               {"flavor", bdfeas::to_string(c.flavor)},
               {"k", pair.alphabet_size()},
               {"n", c.n},
               {"gamma", pair.gamma},
               {"beta", pair.beta},
               {"seed", c.seed},
               {"risk", risk}};
  if (a.oracle) {
    if (c.flavor != bdfeas::Flavor::kMbd)
      throw bdfeas::ConfigError("--oracle applies to model-backdoor detection only");
    const double exact = bdfeas::exact_type3_risk(pair, c.n);
    payload["exact_np_risk"] = exact;
    payload["gap"] = std::abs(risk.p_hat - exact);
    payload["ci_width"] = risk.ci_width();
  }
  std::cout << payload.dump(2) << '\n';
  emit(common, "risk", bdfeas::experiment_to_json(c), payload);
  return 0;
}

// toy ------------------------------------------------------------------

struct ToyArgs {
  std::size_t n = 150;
  double gamma = 0.5;
  double sigma = 0.5;
  std::string v = "0.981,0.196";
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::size_t eval = bdfeas::kToyEvalSamples;
  std::string svg;
  std::string csv;
};

int cmd_toy(const ToyArgs& a, const Common& common) {
  if (a.seeds == 0) throw bdfeas::ParameterError("--seeds must be positive");
  bool normalized = false;
  const auto cfg = bdfeas::ToyConfig::with_direction(parse_vector(a.v), a.sigma, a.gamma, a.n,
                                                      &normalized);
  if (normalized) std::cerr << "warning: --v is not unit length; normalized\n";

  json runs = json::array();
  std::vector<double> pv, acc, succ;
  for (std::size_t i = 0; i < a.seeds; ++i) {
    const std::uint64_t s = a.seed + i;
    const auto run = bdfeas::toy_attack_run(cfg, s, a.eval);
    json r = run.report;
    r["seed"] = s;
    runs.push_back(r);
    pv.push_back(run.report.p_value);
    acc.push_back(run.report.clean_accuracy);
    succ.push_back(run.report.attack_success_rate);
    if (i == 0) {
      if (!a.svg.empty()) {
        if (cfg.dims() == 2) {
          write_file(tagged_path(a.svg, "scatter", ".svg"), bdfeas::toy_scatter_svg(run, cfg));
        } else {
          std::cerr << "warning: scatter plot skipped for K != 2\n";
        }
        write_file(tagged_path(a.svg, "histogram", ".svg"), bdfeas::toy_histogram_svg(run, cfg));
      }
      if (!a.csv.empty()) {
        write_file(tagged_path(a.csv, "scatter", ".csv"), bdfeas::toy_scatter_csv(run, cfg));
        write_file(tagged_path(a.csv, "histogram", ".csv"), bdfeas::toy_histogram_csv(run, cfg));
      }
    }
  }
  json payload{{"mu", cfg.mu()},
               {"delta", cfg.delta()},
               {"runs", runs},
               {"summary",
                {{"seeds", a.seeds},
                 {"median_p_value", median(pv)},
                 {"median_clean_accuracy", median(acc)},
                 {"median_attack_success_rate", median(succ)}}}};
  std::cout << payload.dump(2) << '\n';
  emit(common, "toy",
       json{{"n", a.n},
            {"gamma", a.gamma},
            {"sigma", a.sigma},
            {"v", cfg.v()},
            {"seeds", a.seeds},
            {"seed", a.seed},
            {"eval", a.eval}},
       payload);
  return 0;
}

// probe ----------------------------------------------------------------

struct ProbeArgs {
  std::size_t k = 100000;
  double beta = 0.01;
  double gamma = 1.0;
  std::size_t n = 20;
  std::string detector = "type2-tv";
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

int cmd_probe(const ProbeArgs& a, const Common& common) {
  if (a.trials < bdfeas::kMinTrials) throw bdfeas::ParameterError("trials must be at least 100");
  const bdfeas::ImpossibilityConfig cfg(a.k, a.beta, a.gamma, a.n);
  if (cfg.m <= cfg.n)
    throw bdfeas::ParameterError("floor(beta * k) = " + std::to_string(cfg.m) +
                                 " must exceed n = " + std::to_string(cfg.n) +
                                 " for the construction to bound the risk");
  bdfeas::Type2Detector g;
  if (a.detector == "type2-tv") {
    g = bdfeas::make_type2_tv(a.gamma, a.beta);
  } else {
    g = bdfeas::adapt_type2_from_type1(bdfeas::make_type1_tv(a.gamma, a.beta), a.n);
  }
  const double floor = bdfeas::imposs_floor(cfg);
  const auto risk = bdfeas::imposs_probe(g, cfg, a.trials, a.seed, common.threads);
  const bool pass = floor <= risk.p_hat + 3 * risk.ci_width();
  const json payload{{"detector", a.detector}, {"k", a.k},         {"beta", a.beta},
                     {"gamma", a.gamma},       {"n", a.n},         {"m", cfg.m},
                     {"seed", a.seed},         {"risk", risk},     {"floor", floor},
                     {"ci_width", risk.ci_width()}, {"floor_check", pass ? "pass" : "fail"}};
  std::cout << payload.dump(2) << '\n';
  emit(common, "probe",
       json{{"k", a.k},
            {"beta", a.beta},
            {"gamma", a.gamma},
            {"n", a.n},
            {"detector", a.detector},
            {"trials", a.trials},
            {"seed", a.seed}},
       payload);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backdoor-detection feasibility toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out, "Append a JSON-lines record to this file");
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Minimum training-set size per dataset");
  b->add_option("--alpha", bounds.alpha, "Target risk")->capture_default_str();
  b->add_option("--beta", bounds.beta, "TV slack")->capture_default_str();
  b->add_option("--catalog", bounds.catalog, "Dataset catalog JSON (default: built-in)");
  b->add_option("--format", bounds.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  RiskArgs risk;
  auto* r = app.add_subcommand("risk", "Monte-Carlo detector risk");
  r->add_option("--detector", risk.detector, "Detector id")
      ->check(CLI::IsMember({"np", "type2-tv", "type1-tv", "type0-tv", "bayes-sample"}))
      ->capture_default_str();
  r->add_option("--flavor", risk.flavor, "Detection flavor")
      ->check(CLI::IsMember({"mbd", "sbd", "ood"}))
      ->capture_default_str();
  r->add_option("--k", risk.k, "Alphabet size of the benchmark pair")->capture_default_str();
  r->add_option("--n", risk.n, "Training-set size")->capture_default_str();
  r->add_option("--m", risk.m, "Clean validation samples (0 = n)")->capture_default_str();
  r->add_option("--gamma", risk.gamma, "Poisoning rate")->capture_default_str();
  r->add_option("--beta", risk.beta, "TV slack (default: 1 - TV of the pair)");
  r->add_option("--pair", risk.pair, "Pair JSON {p0, pb, gamma, beta}");
  r->add_option("--config", risk.config, "Experiment config JSON (overrides other flags)");
  r->add_option("--trials", risk.trials, "Monte-Carlo trials (>= 100)")->capture_default_str();
  r->add_option("--seed", risk.seed, "Master seed")->capture_default_str();
  r->add_flag("--oracle", risk.oracle, "Also compute the exact optimal risk");

  ToyArgs toy;
  auto* t = app.add_subcommand("toy", "Gaussian toy backdoor against a projection KS defense");
  t->add_option("--n", toy.n, "Training-set size")->capture_default_str();
  t->add_option("--gamma", toy.gamma, "Poisoning rate")->capture_default_str();
  t->add_option("--sigma", toy.sigma, "Noise level")->capture_default_str();
  t->add_option("--v", toy.v, "Defender direction, comma separated")->capture_default_str();
  t->add_option("--seeds", toy.seeds, "Number of seeds")->capture_default_str();
  t->add_option("--seed", toy.seed, "First seed")->capture_default_str();
  t->add_option("--eval", toy.eval, "Fresh samples for accuracy and attack success")
      ->capture_default_str();
  t->add_option("--svg", toy.svg, "Write <path>-scatter.svg and <path>-histogram.svg");
  t->add_option("--csv", toy.csv, "Write <path>-scatter.csv and <path>-histogram.csv");

  ProbeArgs probe;
  auto* p = app.add_subcommand("probe", "Type-2 detector against the impossibility adversary");
  p->add_option("--k", probe.k, "Alphabet size")->capture_default_str();
  p->add_option("--beta", probe.beta, "TV slack")->capture_default_str();
  p->add_option("--gamma", probe.gamma, "Poisoning rate")->capture_default_str();
  p->add_option("--n", probe.n, "Training-set size")->capture_default_str();
  p->add_option("--detector", probe.detector, "Detector id")
      ->check(CLI::IsMember({"type2-tv", "type1-tv"}))
      ->capture_default_str();
  p->add_option("--trials", probe.trials, "Monte-Carlo trials (>= 100)")->capture_default_str();
  p->add_option("--seed", probe.seed, "Master seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*b) return cmd_bounds(bounds, common);
    if (*r) return cmd_risk(risk, common);
    if (*t) return cmd_toy(toy, common);
    return cmd_probe(probe, common);
  } catch (const bdfeas::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const bdfeas::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
