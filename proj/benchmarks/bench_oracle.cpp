#include <benchmark/benchmark.h>

#include "polsim/oracle.hpp"

using namespace polsim::oracle;

namespace {

OperatorString k_string(int n, int m, int s, int r) {
  OperatorString str;
  for (int i = 0; i < n; ++i) str.push_back(Op::annihilate(kQ));
  for (int i = 0; i < m; ++i) str.push_back(Op::annihilate(kQPrime));
  for (int i = 0; i < s; ++i) str.push_back(Op::create(kQ));
  for (int i = 0; i < r; ++i) str.push_back(Op::create(kQPrime));
  str.push_back(Op::create(Momentum{n - s, m - r}));
  return str;
}

}  // namespace

// Vacuum expectation with the contraction-pruned rewriter; length scaling.
static void BM_VevPoly(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  OperatorString s = k_string(t / 2, t - t / 2, t / 2, t - t / 2 - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vev_poly(s).degree_bound());
  }
  state.SetComplexityN(t);
}
BENCHMARK(BM_VevPoly)->DenseRange(2, 8, 1)->Complexity();

// Full normal ordering (no vacuum pruning), the confluence-test workload.
static void BM_NormalOrder(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  OperatorString s = k_string(t / 2, t - t / 2, t / 2, t - t / 2 - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_order(s).size());
  }
}
BENCHMARK(BM_NormalOrder)->DenseRange(2, 5, 1);

static void BM_KOracleAtN(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_oracle(3, 3, 3, 2, 100).to_double());
  }
}
BENCHMARK(BM_KOracleAtN);

BENCHMARK_MAIN();
