// Microbenchmarks for the hot paths: sampling, one power-iteration solve,
// single GPM/lifted updates, and a full coordinate-ascent solve at small n.

#include <benchmark/benchmark.h>

#include "syncbench/linalg.hpp"
#include "syncbench/losses.hpp"
#include "syncbench/phase.hpp"
#include "syncbench/synthgen.hpp"
#include "syncbench/z2.hpp"

namespace {

using namespace syncbench;

ComplexObservation make_obs(int n, double p, double sigma2) {
  const SeedSpec seed{7, 0};
  const ModelParams params = ModelParams::from_sigma2(n, p, sigma2);
  return sample_observation(sample_truth_phase(n, seed), params, seed);
}

void BM_sample_observation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams params = ModelParams::from_sigma2(n, 0.5, 4.0);
  const SeedSpec seed{7, 0};
  const PhaseVector z = sample_truth_phase(n, seed);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_observation(z, params, seed));
}
BENCHMARK(BM_sample_observation)->Arg(100)->Arg(400);

void BM_spectral_init(benchmark::State& state) {
  const auto obs = make_obs(static_cast<int>(state.range(0)), 1.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_init(obs));
}
BENCHMARK(BM_spectral_init)->Arg(100)->Arg(400);

void BM_gpm_step(benchmark::State& state) {
  const auto obs = make_obs(static_cast<int>(state.range(0)), 1.0, 4.0);
  PhaseVector z = spectral_init(obs).estimate;
  for (auto _ : state) {
    z = gpm_step(obs, z);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_gpm_step)->Arg(100)->Arg(400);

void BM_lifted_step(benchmark::State& state) {
  const auto obs = make_obs(static_cast<int>(state.range(0)), 1.0, 4.0);
  ComplexLifted V = lift(spectral_init(obs).estimate);
  for (auto _ : state) {
    V = lifted_step(obs, V);
    benchmark::DoNotOptimize(V);
  }
}
BENCHMARK(BM_lifted_step)->Arg(100)->Arg(200);

void BM_sdp_solve(benchmark::State& state) {
  const auto obs = make_obs(static_cast<int>(state.range(0)), 1.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(sdp_solve(obs));
}
BENCHMARK(BM_sdp_solve)->Arg(100)->Arg(200);

void BM_loss_vector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhaseVector a = sample_truth_phase(n, SeedSpec{1, 0});
  const PhaseVector b = sample_truth_phase(n, SeedSpec{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(loss_vector(a, b));
}
BENCHMARK(BM_loss_vector)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
