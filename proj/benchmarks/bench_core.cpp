#include <cmath>

#include <benchmark/benchmark.h>

#include "ssmud/metrics.hpp"
#include "ssmud/montecarlo.hpp"
#include "ssmud/ratio.hpp"
#include "ssmud/solver.hpp"
#include "ssmud/specfun.hpp"

using namespace ssmud;

namespace {

SystemConfig system_of(int K, int L, double m) {
  return {K, L, 1.0, FadingSpec::from_shape(m), FadingSpec::from_shape(m)};
}

const double k5dB = std::pow(10.0, 0.5);

void BM_Gauss2F1(benchmark::State& state) {
  double u = 0.0;
  for (auto _ : state) {
    u = u < 0.98 ? u + 0.013 : 0.0;
    benchmark::DoNotOptimize(specfun::gauss_2f1(1.0, 6.0, 5.0, u));
  }
}
BENCHMARK(BM_Gauss2F1);

void BM_RegIncGamma(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x = x < 20.0 ? x + 0.37 : 0.01;
    benchmark::DoNotOptimize(specfun::reg_inc_gamma(2.5, x));
  }
}
BENCHMARK(BM_RegIncGamma);

void BM_RatioPdf(benchmark::State& state) {
  const auto mode = static_cast<ratio::RatioMode>(state.range(0));
  const ratio::RatioDistribution law({2.0, 3, mode});
  double z = 0.0;
  for (auto _ : state) {
    z = z < 20.0 ? z + 0.29 : 0.05;
    benchmark::DoNotOptimize(law.pdf(z));
  }
}
BENCHMARK(BM_RatioPdf)->Arg(0)->Arg(1);

void BM_ConstraintExpectations(benchmark::State& state) {
  const auto config = system_of(5, static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(constraint_expectations({0.15, 0.1}, config));
}
BENCHMARK(BM_ConstraintExpectations)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SolveAip(benchmark::State& state) {
  const auto config = system_of(5, 2, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_duals_aip(config, {k5dB, k5dB, InterferenceMode::Average}));
}
BENCHMARK(BM_SolveAip)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Joint2DCapacity(benchmark::State& state) {
  const auto config = system_of(5, 2, 1.0);
  const Policy policy = Policy::aip({0.151, 0.105});
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_capacity(config, policy, Formulation::Joint2D));
}
BENCHMARK(BM_Joint2DCapacity)->Unit(benchmark::kMillisecond);

void BM_SimulateMetrics(benchmark::State& state) {
  const auto config = system_of(5, 2, 2.0);
  const Policy policy = Policy::aip({0.2, 0.05});
  mc::SimSpec spec;
  spec.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mc::simulate_metrics(config, policy, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateMetrics)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
