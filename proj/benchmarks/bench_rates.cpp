#include <benchmark/benchmark.h>

#include "polsim/config.hpp"
#include "polsim/dynamics.hpp"
#include "polsim/polariton.hpp"
#include "polsim/rates.hpp"

using namespace polsim;

namespace {

DeviceConfig& gaas() {
  static DeviceConfig c = load_config("");
  return c;
}

}  // namespace

// Bosonicity assembly at n = 0 (the Fig. 2 sweep workload), shared engine.
static void BM_BosonicitySweepPoint(benchmark::State& state) {
  RateModel model(gaas());
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.bosonicity_weights(m, 0, 0.25, 0.25).B);
  }
}
BENCHMARK(BM_BosonicitySweepPoint)->Arg(50)->Arg(200)->Arg(500);

// Full scattering-rate evaluation including the interpolated B.
static void BM_ScatteringRate(benchmark::State& state) {
  RateModel model(gaas());
  ScatteringGeometry g = default_geometry(gaas());
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.scattering_rate(220.5, 2.5, g).gamma_sc);
  }
}
BENCHMARK(BM_ScatteringRate);

// Threshold root solve end to end (fresh model, cold caches).
static void BM_Threshold(benchmark::State& state) {
  ScatteringGeometry g = default_geometry(gaas());
  for (auto _ : state) {
    RateModel model(gaas());
    benchmark::DoNotOptimize(threshold(model, g).m_thr);
  }
}
BENCHMARK(BM_Threshold);

BENCHMARK_MAIN();
