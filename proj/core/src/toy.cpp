#include "bdfeas/toy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bdfeas/error.hpp"
#include "bdfeas/rng.hpp"
#include "bdfeas/svg.hpp"

namespace bdfeas {

namespace {

constexpr double kUnitTolerance = 1e-9;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void check_dims(const LabeledSample& s, std::size_t k) {
  if (s.z.size() != k) throw DimensionError("sample dimension does not match the direction");
}

}  // namespace

std::vector<double> toy_delta(std::span<const double> v) {
  const auto k = static_cast<double>(v.size());
  if (v.empty()) throw ParameterError("direction must be non-empty");
  const double mu = std::accumulate(v.begin(), v.end(), 0.0);
  const double gap = k - mu * mu;
  // v parallel to the all-ones vector leaves no orthogonal room for the shift.
  if (!(gap > 1e-12)) throw DegenerateError("direction is parallel to the all-ones vector");
  const double scale = 2.0 / std::sqrt(gap);
  std::vector<double> delta(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) delta[i] = scale * (1.0 - mu * v[i]) - 2.0 * mu * v[i];
  return delta;
}

ToyConfig::ToyConfig(std::vector<double> v, double sigma, double gamma, std::size_t n)
    : v_(std::move(v)), sigma_(sigma), gamma_(gamma), n_(n) {
  if (v_.size() < 2) throw ParameterError("toy problem needs at least 2 dimensions");
  for (double x : v_)
    if (!std::isfinite(x)) throw ParameterError("direction has a non-finite entry");
  const double norm = std::sqrt(dot(v_, v_));
  if (std::abs(norm - 1.0) > kUnitTolerance) throw ParameterError("direction must be unit length");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) throw ParameterError("sigma must be >= 0");
  if (!(gamma_ >= 0.0 && gamma_ <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  if (n_ == 0) throw ParameterError("n must be positive");
  mu_ = std::accumulate(v_.begin(), v_.end(), 0.0);
  delta_ = toy_delta(v_);
}

ToyConfig ToyConfig::with_direction(std::vector<double> v, double sigma, double gamma,
                                    std::size_t n, bool* was_normalized) {
  const double norm = std::sqrt(dot(v, v));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ParameterError("direction has zero length");
  const bool off = std::abs(norm - 1.0) > kUnitTolerance;
  if (off)
    for (double& x : v) x /= norm;
  if (was_normalized != nullptr) *was_normalized = off;
  return ToyConfig(std::move(v), sigma, gamma, n);
}

ToyConfig ToyConfig::with_gamma(double gamma) const { return ToyConfig(v_, sigma_, gamma, n_); }

std::vector<LabeledSample> toy_sample_clean(const ToyConfig& config, std::size_t n,
                                            std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<LabeledSample> out(n);
  for (auto& s : out) {
    s.y = rng.bernoulli(0.5) ? 1 : -1;
    s.z.resize(config.dims());
    for (double& zi : s.z) zi = s.y + config.sigma() * rng.normal();
  }
  return out;
}

LabeledSample toy_backdoor(const LabeledSample& s, const ToyConfig& config) {
  check_dims(s, config.dims());
  LabeledSample b{-s.y, s.z};
  for (std::size_t i = 0; i < b.z.size(); ++i) b.z[i] += s.y * config.delta()[i];
  return b;
}

std::vector<LabeledSample> toy_poison(const std::vector<LabeledSample>& clean, double gamma,
                                      const ToyConfig& config, std::uint64_t seed) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  CounterRng rng(seed);
  std::vector<LabeledSample> out;
  out.reserve(clean.size());
  for (const auto& s : clean) out.push_back(rng.bernoulli(gamma) ? toy_backdoor(s, config) : s);
  return out;
}

double toy_projection(const LabeledSample& s, std::span<const double> v) {
  if (s.z.size() != v.size()) throw DimensionError("sample dimension does not match the direction");
  return s.y * dot(s.z, v);
}

KsResult toy_ks_defense(const std::vector<LabeledSample>& data, const ToyConfig& config) {
  std::vector<double> f;
  f.reserve(data.size());
  for (const auto& s : data) f.push_back(toy_projection(s, config.v()));
  const double mu = config.mu();
  const double sd = config.sigma();
  return ks_test(f, [mu, sd](double x) { return normal_cdf(x, mu, sd); });
}

int LinearClassifier::predict(std::span<const double> z) const {
  if (z.size() != w.size()) throw DimensionError("input dimension does not match the classifier");
  return dot(w, z) + b >= 0.0 ? 1 : -1;
}

double LinearClassifier::accuracy(const std::vector<LabeledSample>& data) const {
  if (data.empty()) throw ParameterError("accuracy of an empty set");
  std::size_t hits = 0;
  for (const auto& s : data) hits += predict(s.z) == s.y ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

LinearClassifier toy_train_classifier(const std::vector<LabeledSample>& data) {
  if (data.empty()) throw DegenerateError("no training data");
  const std::size_t k = data.front().z.size();
  bool pos = false;
  bool neg = false;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(k + 1));
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t r = 0; r < data.size(); ++r) {
    check_dims(data[r], k);
    const auto row = static_cast<Eigen::Index>(r);
    for (std::size_t c = 0; c < k; ++c) a(row, static_cast<Eigen::Index>(c)) = data[r].z[c];
    a(row, static_cast<Eigen::Index>(k)) = 1.0;
    y(row) = data[r].y;
    (data[r].y > 0 ? pos : neg) = true;
  }
  if (!(pos && neg)) throw DegenerateError("training data contains a single class");
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(y);
  LinearClassifier model;
  model.w.assign(sol.data(), sol.data() + k);
  model.b = sol(static_cast<Eigen::Index>(k));
  return model;
}

ToyRun toy_attack_run(const ToyConfig& config, std::uint64_t seed, std::size_t eval_samples) {
  if (eval_samples == 0) throw ParameterError("eval_samples must be positive");
  ToyRun run;
  run.clean = toy_sample_clean(config, config.n(), derive_seed(seed, 0));
  run.poisoned = toy_poison(run.clean, config.gamma(), config, derive_seed(seed, 1));
  const KsResult ks = toy_ks_defense(run.poisoned, config);
  run.report.p_value = ks.p_value;
  run.report.ks_statistic = ks.statistic;
  run.clean_model = toy_train_classifier(run.clean);
  run.poisoned_model = toy_train_classifier(run.poisoned);

  const auto test = toy_sample_clean(config, eval_samples, derive_seed(seed, 2));
  run.report.clean_accuracy = run.poisoned_model.accuracy(test);
  std::size_t flipped = 0;
  for (const auto& s : test) {
    const LabeledSample b = toy_backdoor(s, config);
    flipped += run.poisoned_model.predict(b.z) == b.y ? 1 : 0;
  }
  run.report.attack_success_rate =
      static_cast<double>(flipped) / static_cast<double>(eval_samples);
  return run;
}

ToyReport toy_attack_report(const ToyConfig& config, std::uint64_t seed,
                            std::size_t eval_samples) {
  return toy_attack_run(config, seed, eval_samples).report;
}

namespace {

// Backdoored training points are exactly those whose label differs from the
// clean sample they replaced.
bool is_replaced(const ToyRun& run, std::size_t i) { return run.poisoned[i].y != run.clean[i].y; }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  void pad(double frac) {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double d = (hi - lo) * frac;
    lo -= d;
    hi += d;
  }
};

// Clips w1 x + w2 y + b = 0 to the plot box and draws it.
void draw_boundary(SvgCanvas& svg, const LinearClassifier& m, const Range& xr, const Range& yr,
                   const std::string& color, const std::string& dash) {
  const double w1 = m.w[0];
  const double w2 = m.w[1];
  if (std::abs(w2) > 1e-12) {
    svg.line(xr.lo, -(m.b + w1 * xr.lo) / w2, xr.hi, -(m.b + w1 * xr.hi) / w2, color, 2.0, dash);
  } else if (std::abs(w1) > 1e-12) {
    const double x = -m.b / w1;
    svg.line(x, yr.lo, x, yr.hi, color, 2.0, dash);
  }
}

std::vector<double> projections(const std::vector<LabeledSample>& data, const ToyConfig& config) {
  std::vector<double> f;
  f.reserve(data.size());
  for (const auto& s : data) f.push_back(toy_projection(s, config.v()));
  return f;
}

struct Histogram {
  double lo = 0.0;
  double width = 1.0;
  std::vector<std::size_t> clean;
  std::vector<std::size_t> poisoned;
};

Histogram histogram(const ToyRun& run, const ToyConfig& config, std::size_t bins) {
  if (bins == 0) throw ParameterError("bins must be positive");
  const auto fc = projections(run.clean, config);
  const auto fp = projections(run.poisoned, config);
  Range r;
  for (double x : fc) r.add(x);
  for (double x : fp) r.add(x);
  if (!(r.hi > r.lo)) r.pad(0.0);
  Histogram h;
  h.lo = r.lo;
  h.width = (r.hi - r.lo) / static_cast<double>(bins);
  h.clean.assign(bins, 0);
  h.poisoned.assign(bins, 0);
  auto bin_of = [&](double x) {
    const auto b = static_cast<std::size_t>((x - h.lo) / h.width);
    return std::min(b, bins - 1);
  };
  for (double x : fc) ++h.clean[bin_of(x)];
  for (double x : fp) ++h.poisoned[bin_of(x)];
  return h;
}

}  // namespace

std::string toy_scatter_svg(const ToyRun& run, const ToyConfig& config) {
  if (config.dims() != 2) throw ParameterError("scatter plot needs a 2-D problem");
  Range xr;
  Range yr;
  for (const auto& s : run.poisoned) {
    xr.add(s.z[0]);
    yr.add(s.z[1]);
  }
  xr.pad(0.05);
  yr.pad(0.05);
  SvgCanvas svg(640, 560, xr.lo, xr.hi, yr.lo, yr.hi);
  svg.title("training data and learned boundaries");
  svg.axes("z1", "z2");
  for (std::size_t i = 0; i < run.poisoned.size(); ++i) {
    const auto& s = run.poisoned[i];
    std::string color = s.y > 0 ? "#1f77b4" : "#ff7f0e";
    if (is_replaced(run, i)) color = s.y > 0 ? "#2ca02c" : "#d62728";
    svg.circle(s.z[0], s.z[1], 3.0, color, 0.8);
  }
  draw_boundary(svg, run.clean_model, xr, yr, "#555555", "6,4");
  draw_boundary(svg, run.poisoned_model, xr, yr, "#000000", "");
  svg.legend(0, "#1f77b4", "clean, y = +1");
  svg.legend(1, "#ff7f0e", "clean, y = -1");
  svg.legend(2, "#2ca02c", "backdoored, y = +1");
  svg.legend(3, "#d62728", "backdoored, y = -1");
  svg.legend(4, "#555555", "boundary (clean data, dashed)");
  svg.legend(5, "#000000", "boundary (poisoned data)");
  return svg.str();
}

std::string toy_histogram_svg(const ToyRun& run, const ToyConfig& config, std::size_t bins) {
  const Histogram h = histogram(run, config, bins);
  std::size_t peak = 1;
  for (std::size_t b = 0; b < bins; ++b) peak = std::max({peak, h.clean[b], h.poisoned[b]});
  const double hi = h.lo + h.width * static_cast<double>(bins);
  SvgCanvas svg(640, 420, h.lo, hi, 0.0, static_cast<double>(peak) * 1.1);
  svg.title("projection onto the defender direction");
  svg.axes("f(X)", "count");
  for (std::size_t b = 0; b < bins; ++b) {
    const double x0 = h.lo + h.width * static_cast<double>(b);
    const double mid = x0 + h.width / 2;
    svg.rect(x0, 0.0, mid, static_cast<double>(h.clean[b]), "#1f77b4", 0.7);
    svg.rect(mid, 0.0, x0 + h.width, static_cast<double>(h.poisoned[b]), "#d62728", 0.7);
  }
  svg.legend(0, "#1f77b4", "clean");
  svg.legend(1, "#d62728", "poisoned");
  return svg.str();
}

std::string toy_scatter_csv(const ToyRun& run, const ToyConfig& config) {
  std::ostringstream out;
  out.precision(17);
  out << "set,label";
  for (std::size_t i = 0; i < config.dims(); ++i) out << ",z" << i + 1;
  out << ",projection\n";
  auto emit = [&](const char* set, const LabeledSample& s) {
    out << set << ',' << s.y;
    for (double x : s.z) out << ',' << x;
    out << ',' << toy_projection(s, config.v()) << '\n';
  };
  for (const auto& s : run.clean) emit("clean", s);
  for (std::size_t i = 0; i < run.poisoned.size(); ++i)
    emit(is_replaced(run, i) ? "backdoored" : "poisoned-clean", run.poisoned[i]);
  return out.str();
}

std::string toy_histogram_csv(const ToyRun& run, const ToyConfig& config, std::size_t bins) {
  const Histogram h = histogram(run, config, bins);
  std::ostringstream out;
  out.precision(17);
  out << "bin_low,bin_high,clean_count,poisoned_count\n";
  for (std::size_t b = 0; b < bins; ++b) {
    const double x0 = h.lo + h.width * static_cast<double>(b);
    out << x0 << ',' << x0 + h.width << ',' << h.clean[b] << ',' << h.poisoned[b] << '\n';
  }
  return out.str();
}

}  // namespace bdfeas
