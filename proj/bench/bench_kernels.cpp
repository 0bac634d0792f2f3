// Serial reference vs OpenMP kernel for the sampled modulus lower bound and
// the experiment grid sweep.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "goldstein/deviation.hpp"
#include "goldstein/harness.hpp"
#include "goldstein/random.hpp"

namespace {

using namespace goldstein;

// Fixed mixed-sign problem in R^n with a known lower bound of 0:
// K |x|_inf - max_i (a_i . x), K = sqrt(n) max |a_i|.
Objective bench_problem(int n) {
  Rng rng(2718);
  SignedMaxAffine concave{-1, {}};
  double slope = 0.0;
  for (int i = 0; i < 6; ++i) {
    Vector a = rng.box(n, 1.0);
    slope = std::max(slope, a.norm());
    concave.pieces.push_back({a, 0.0});
  }
  const double k = 1.25 * std::sqrt(static_cast<double>(n)) * slope;
  SignedMaxAffine box{1, {}};
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = k;
    box.pieces.push_back({e, 0.0});
    box.pieces.push_back({-e, 0.0});
  }
  return Objective(n, Matrix(), Vector(), {box, concave});
}

ExperimentConfig bench_config(int n) {
  ExperimentConfig config;
  config.x0 = Vector::Constant(n, 1.0);
  config.deltas = {0.05, 0.1, 0.2};
  config.epsilons = {0.05, 0.1, 0.2};
  config.f_lb = 0.0;
  config.lower_samples = 256;
  return config;
}

void BM_LowerBoundSerial(benchmark::State& state) {
  const Objective f = bench_problem(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sampled_modulus_lower_bound_serial(f, 0.2, static_cast<int>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LowerBoundParallel(benchmark::State& state) {
  const Objective f = bench_problem(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sampled_modulus_lower_bound(f, 0.2, static_cast<int>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_GridSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Objective f = bench_problem(n);
  const ExperimentConfig config = bench_config(n);
  for (auto _ : state) benchmark::DoNotOptimize(run_grid_serial(f, config));
}

void BM_GridParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Objective f = bench_problem(n);
  const ExperimentConfig config = bench_config(n);
  for (auto _ : state) benchmark::DoNotOptimize(run_grid(f, config));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_LowerBoundSerial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_LowerBoundParallel)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_GridSerial)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
