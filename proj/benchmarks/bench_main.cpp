#include <bandwagon/dynamics.hpp>
#include <bandwagon/montecarlo.hpp>
#include <bandwagon/numerics.hpp>
#include <bandwagon/signed_graph.hpp>
#include <bandwagon/trajectory.hpp>

#include <benchmark/benchmark.h>

using namespace bandwagon;

namespace {

OpinionMatrix random_initial(std::size_t n, std::size_t m, std::uint64_t trial = 0) {
  TrialStream stream(7, n, m, trial);
  return sample_initial(n, m, 10.0, stream);
}

void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const ModelState s{random_initial(n, m), std::nullopt, 0};
  for (auto _ : state) benchmark::DoNotOptimize(step(s));
}
BENCHMARK(BM_Step)->Args({9, 5})->Args({20, 10})->Args({100, 10})->Args({300, 10});

void BM_RunTrajectory(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const auto y0 = random_initial(n, m, trial++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_trajectory(y0, 10000, 1e-12, false));
  }
}
BENCHMARK(BM_RunTrajectory)->Args({9, 5})->Args({20, 10})->Args({100, 10});

void BM_SymmetricEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto y = random_initial(n, 3);
  const auto x = appraisal_update(y);
  const auto real = to_real(x, 1.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigenvalues(real));
}
BENCHMARK(BM_SymmetricEigenvalues)->Arg(9)->Arg(20)->Arg(100);

void BM_CertifyBalance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = appraisal_update(random_initial(n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(certify_balance(x));
}
BENCHMARK(BM_CertifyBalance)->Arg(20)->Arg(300);

}  // namespace
BENCHMARK_MAIN();
