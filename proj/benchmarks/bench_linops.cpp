#include <benchmark/benchmark.h>

#include "condest/linops.hpp"
#include "condest/matgen.hpp"
#include "condest/random.hpp"

using namespace condest;

namespace {

DenseMatrix gaussian(std::size_t m, std::size_t n) {
  Rng rng(1);
  DenseMatrix a(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) a(i, j) = rng.normal();
  return a;
}

void BM_DenseApply(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto a = gaussian(m, n);
  Rng rng(2);
  const auto x = random_gaussian_vector(n, rng);
  Vector y(m);
  for (auto _ : state) {
    a.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_DenseApply)->Args({1000, 400})->Args({250, 100});

void BM_DenseApplyAdjoint(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto a = gaussian(m, n);
  Rng rng(3);
  const auto y = random_gaussian_vector(m, rng);
  Vector x(n);
  for (auto _ : state) {
    a.apply_adjoint(y, x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_DenseApplyAdjoint)->Args({1000, 400});

void BM_SparseApply(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(4);
  const auto a = random_sign_matrix(m, n, rng);
  const auto x = random_gaussian_vector(n, rng);
  const auto y = random_gaussian_vector(m, rng);
  Vector ax(m);
  Vector aty(n);
  for (auto _ : state) {
    a.apply(x, ax);
    a.apply_adjoint(y, aty);
    benchmark::DoNotOptimize(ax.data());
    benchmark::DoNotOptimize(aty.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * a.nnz()));
}
BENCHMARK(BM_SparseApply)->Args({1000, 900})->Args({100000, 90000});

void BM_Norm2(benchmark::State& state) {
  Rng rng(5);
  const auto x = random_gaussian_vector(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm2(x));
  }
}
BENCHMARK(BM_Norm2)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
