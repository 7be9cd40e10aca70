#include <benchmark/benchmark.h>

#include "qfilter/correlator.hpp"
#include "qfilter/experiment.hpp"
#include "qfilter/random.hpp"
#include "qfilter/verify.hpp"

namespace {

using namespace qfilter;

void BM_Correlation(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const PureState a = haar_state(dim, rng);
  const PureState b = haar_state(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_coefficient(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Correlation)->RangeMultiplier(2)->Range(2, 256)->Complexity();

void BM_PostselectPure(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const DensityMatrix rho = density_from_pure(haar_state(dim, rng));
  const PureState ref = haar_state(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(postselect_filter(rho, ref));
}
BENCHMARK(BM_PostselectPure)->RangeMultiplier(2)->Range(2, 64);

void BM_PostselectMixed(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const DensityMatrix rho = random_density(dim, dim, rng);
  const PureState ref = haar_state(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(postselect_filter(rho, ref));
}
BENCHMARK(BM_PostselectMixed)->RangeMultiplier(2)->Range(2, 64);

void BM_PostselectViaUnitary(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const DensityMatrix rho = random_density(dim, dim, rng);
  const PureState ref = haar_state(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(postselect_filter_via_unitary(rho, ref));
}
BENCHMARK(BM_PostselectViaUnitary)->RangeMultiplier(2)->Range(2, 8);

void BM_Fidelity(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  const DensityMatrix a = random_density(dim, dim, rng);
  const DensityMatrix b = random_density(dim, dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(a, b));
}
BENCHMARK(BM_Fidelity)->RangeMultiplier(2)->Range(2, 64);

void BM_PhaseFlipDemo(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_phase_flip_demo(n, 0.5));
}
BENCHMARK(BM_PhaseFlipDemo)->DenseRange(1, 6);

}  // namespace

BENCHMARK_MAIN();
