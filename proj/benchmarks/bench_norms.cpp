#include <random>

#include <benchmark/benchmark.h>

#include <hankelmc/norms.hpp>

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = u(rng);
  return 0.5 * (m + m.transpose()).eval();
}

void BM_nuclear_norm(benchmark::State& state) {
  const Eigen::MatrixXd m =
      random_symmetric(static_cast<int>(state.range(0)), 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(hankelmc::nuclear_norm(m));
}

void BM_svt(benchmark::State& state) {
  const Eigen::MatrixXd m =
      random_symmetric(static_cast<int>(state.range(0)), 43);
  for (auto _ : state) {
    Eigen::MatrixXd x = hankelmc::svt(m, 0.25);
    benchmark::DoNotOptimize(x.data());
  }
}

}  // namespace

BENCHMARK(BM_nuclear_norm)->Arg(4)->Arg(10)->Arg(40)->Arg(128);
BENCHMARK(BM_svt)->Arg(4)->Arg(10)->Arg(40)->Arg(128);
