#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "isoperim/deficit.hpp"
#include "isoperim/extremals.hpp"
#include "isoperim/functional.hpp"
#include "isoperim/measure.hpp"
#include "isoperim/oracle.hpp"
#include "isoperim/quantile_set.hpp"

using namespace isoperim;

static PiecewiseFunction make_tent(const Measure& m) {
  return PiecewiseFunction({m.quantile(0.3), m.quantile(0.5), m.quantile(0.7)},
                           {0.0, 1.0, 0.0});
}

static void BM_JCauchy(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(m.j(0.2 + t));
  }
}
BENCHMARK(BM_JCauchy);

static void BM_JSubExponential(benchmark::State& state) {
  Measure m = Measure::sub_exponential(0.5);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(m.j(0.2 + t));
  }
}
BENCHMARK(BM_JSubExponential);

static void BM_QuantileSubExponential(benchmark::State& state) {
  Measure m = Measure::sub_exponential(0.5);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(m.quantile(0.3 + t));
  }
}
BENCHMARK(BM_QuantileSubExponential);

static void BM_Perimeter(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  QuantileSet s({0.05, 0.2, 0.3, 0.55, 0.7, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(perimeter(s, m));
}
BENCHMARK(BM_Perimeter);

static void BM_Asymmetry(benchmark::State& state) {
  QuantileSet s({0.05, 0.2, 0.3, 0.55, 0.7, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(asymmetry(s));
}
BENCHMARK(BM_Asymmetry);

static void BM_MinCandidate(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(min_candidate(m, 0.3, 0.4, false));
}
BENCHMARK(BM_MinCandidate);

static void BM_DeficitLowerBound(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(deficit_lower_bound(m, 0.3, 0.4, false));
}
BENCHMARK(BM_DeficitLowerBound);

static void BM_RegionMap(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(region_map(m, int(state.range(0))));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RegionMap)->Arg(8)->Arg(16)->Arg(32)->Complexity();

static void BM_CheegerBeta(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cheeger_beta(m, 0.1));
}
BENCHMARK(BM_CheegerBeta);

static void BM_ProfileFromBeta(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(profile_from_beta(m, 0.3));
}
BENCHMARK(BM_ProfileFromBeta);

static void BM_DecreasingRearrangement(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  PiecewiseFunction tent = make_tent(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(decreasing_rearrangement(tent, m, 0.17));
}
BENCHMARK(BM_DecreasingRearrangement);

static void BM_IntegralAbs(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  PiecewiseFunction tent = make_tent(m);
  for (auto _ : state) benchmark::DoNotOptimize(integral_abs(tent, m));
}
BENCHMARK(BM_IntegralAbs);

static void BM_OracleCell(benchmark::State& state) {
  Measure m = Measure::generalized_cauchy(1.0);
  OracleConfig cfg;
  cfg.grid_n = int(state.range(0));
  cfg.max_components = 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_min_perimeter(m, 0.3, 0.25, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleCell)->Arg(20)->Arg(40)->Arg(80)->Complexity();

BENCHMARK_MAIN();
