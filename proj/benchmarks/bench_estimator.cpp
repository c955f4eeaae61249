#include <benchmark/benchmark.h>

#include "condest/estimator.hpp"
#include "condest/matgen.hpp"
#include "condest/spectral.hpp"
#include "condest/svd_oracle.hpp"

using namespace condest;

namespace {

GeneratedMatrix scaled_preset(const char* name, std::size_t divisor) {
  const Preset p = divisor == 1 ? preset(name) : scaled(preset(name), divisor);
  Rng rng = Rng(7).derive(50);
  return matrix_with_spectrum(p.m, p.n, p.spectrum, rng);
}

void BM_EstimateFig1(benchmark::State& state) {
  const auto g = scaled_preset("fig1", 1);
  EstimatorConfig config;
  config.seed = 7;
  for (auto _ : state) {
    const auto r = estimate_condition(g.matrix, config);
    benchmark::DoNotOptimize(r.sigma_min_hat);
    state.counters["iterations"] = static_cast<double>(r.iterations);
  }
}
BENCHMARK(BM_EstimateFig1)->Unit(benchmark::kMillisecond);

void BM_EstimateSignMatrix(benchmark::State& state) {
  Rng rng = Rng(1).derive(50);
  const auto a = random_sign_matrix(static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(1)), rng);
  EstimatorConfig config;
  config.seed = 1;
  for (auto _ : state) {
    const auto r = estimate_condition(a, config);
    benchmark::DoNotOptimize(r.sigma_min_hat);
    state.counters["iterations"] = static_cast<double>(r.iterations);
  }
}
BENCHMARK(BM_EstimateSignMatrix)->Args({1000, 450})->Args({1000, 900})->Unit(benchmark::kMillisecond);

void BM_SigmaMax(benchmark::State& state) {
  const auto g = scaled_preset("fig7_log", 1);
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(estimate_sigma_max(g.matrix, 0.1, 1e-12, rng).sigma_hat);
  }
}
BENCHMARK(BM_SigmaMax)->Unit(benchmark::kMillisecond);

void BM_InverseIterationBidiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  std::vector<double> d(n);
  std::vector<double> e(n - 1);
  for (auto& x : d) x = 0.1 + rng.uniform();
  for (auto& x : e) x = rng.normal();
  const BidiagonalUpper r(d, e);
  for (auto _ : state) {
    Rng local(5);
    benchmark::DoNotOptimize(inverse_power_sigma_min(r, 0.1, 1e-12, local));
  }
}
BENCHMARK(BM_InverseIterationBidiagonal)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_JacobiSvd(benchmark::State& state) {
  const auto g = scaled_preset("fig7_log", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_svd(g.matrix).singular_values.back());
  }
}
BENCHMARK(BM_JacobiSvd)->Arg(8)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
