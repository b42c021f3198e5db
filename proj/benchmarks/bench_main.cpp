#include <benchmark/benchmark.h>

#include "bdfeas/bounds.hpp"
#include "bdfeas/categorical.hpp"
#include "bdfeas/detectors.hpp"
#include "bdfeas/harness.hpp"
#include "bdfeas/impossibility.hpp"
#include "bdfeas/toy.hpp"

using namespace bdfeas;

static void BM_Sample(benchmark::State& state) {
  const auto p = Categorical::uniform(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(p, 1000, seed++));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sample)->Arg(2)->Arg(256)->Arg(65536);

static void BM_TypeTvSparse(benchmark::State& state) {
  const auto p = Categorical::uniform(1000000);
  const auto d = sample(p, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(type_tv_distance(d, p));
}
BENCHMARK(BM_TypeTvSparse)->Arg(20)->Arg(1000);

static void BM_ProductTvExact(benchmark::State& state) {
  const Categorical p({0.2, 0.3, 0.5});
  const Categorical q({0.5, 0.3, 0.2});
  for (auto _ : state)
    benchmark::DoNotOptimize(product_tv_exact(p, q, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ProductTvExact)->DenseRange(2, 10, 4);

static void BM_Table2(benchmark::State& state) {
  const auto catalog = default_catalog();
  for (auto _ : state) benchmark::DoNotOptimize(table2_report(0.1, 0.001, catalog));
}
BENCHMARK(BM_Table2);

static void BM_NpRisk(benchmark::State& state) {
  const DistributionPair pair(Categorical::uniform(3), Categorical::point_mass(3, 0), 0.5,
                              1.0 / 3);
  const RiskProblem problem(pair, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_risk(make_np_detector(), problem, 1000, seed++, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_NpRisk)->Arg(5)->Arg(50);

static void BM_ImpossProbe(benchmark::State& state) {
  const ImpossibilityConfig cfg(100000, 0.01, 1.0, 20);
  const auto g = make_type2_tv(1.0, 0.01);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(imposs_probe(g, cfg, 1000, seed++, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ImpossProbe);

static void BM_ToyAttack(benchmark::State& state) {
  const auto cfg = ToyConfig::with_direction({0.981, 0.196}, 0.5, 0.5, 150);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(toy_attack_report(cfg, seed++));
}
BENCHMARK(BM_ToyAttack);
BENCHMARK_MAIN();
