#include <benchmark/benchmark.h>

#include "polsim/correlator.hpp"

using namespace polsim;

// Cold evaluation of the n = 0 normalization chain: the memo is rebuilt
// every iteration, so this measures the recurrence itself.
static void BM_NormChainCold(benchmark::State& state) {
  const long m = state.range(0);
  for (auto _ : state) {
    CorrelatorEngine engine(2000, NumericMode::signed_log_float);
    benchmark::DoNotOptimize(engine.norm_correlator(0, m).to_double());
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_NormChainCold)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

// Warm lookups against a populated cache.
static void BM_KMemoHit(benchmark::State& state) {
  CorrelatorEngine engine(2000, NumericMode::signed_log_float);
  engine.norm_correlator(0, 512);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.K(0, 512, 0, 511).slog.logmag);
  }
}
BENCHMARK(BM_KMemoHit);

// Exact-rational evaluation at small occupation, the oracle-agreement
// regime.
static void BM_KExactSmall(benchmark::State& state) {
  for (auto _ : state) {
    CorrelatorEngine engine(100, NumericMode::exact_rational);
    benchmark::DoNotOptimize(engine.K(3, 3, 3, 2).exact.to_double());
  }
}
BENCHMARK(BM_KExactSmall);

// f_m^n with nonzero superscript exercises the general four-index keys.
static void BM_FGeneral(benchmark::State& state) {
  const long m = state.range(0);
  for (auto _ : state) {
    CorrelatorEngine engine(2000, NumericMode::signed_log_float);
    benchmark::DoNotOptimize(engine.f(m, 8).to_double());
  }
}
BENCHMARK(BM_FGeneral)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
