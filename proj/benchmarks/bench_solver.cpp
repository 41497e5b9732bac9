#include <benchmark/benchmark.h>

#include <hankelmc/solver.hpp>

namespace {

Eigen::VectorXd pole_pinned(double h, int n) {
  Eigen::VectorXd pinned(n);
  double p = 1.0;
  for (int k = 0; k < n; ++k) {
    pinned(k) = p;
    p *= h;
  }
  return pinned;
}

Eigen::VectorXd two_pole_pinned(double h1, double h2, int n) {
  Eigen::VectorXd pinned(n);
  double p1 = 1.0, p2 = 1.0;
  for (int k = 0; k < n; ++k) {
    pinned(k) = p1 + p2;
    p1 *= h1;
    p2 *= h2;
  }
  return pinned;
}

void BM_complete_single_pole(benchmark::State& state) {
  const Eigen::VectorXd pinned =
      pole_pinned(0.5, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const hankelmc::SolverResult res = hankelmc::complete(pinned);
    benchmark::DoNotOptimize(res.nuclear_norm_hat);
  }
}

// A cell from the hard corner of the two-pole map; dominated by the
// iteration count rather than the per-iteration cost.
void BM_complete_two_pole_hard(benchmark::State& state) {
  hankelmc::SolverConfig cfg;
  cfg.max_iter = 20000;
  const Eigen::VectorXd pinned = two_pole_pinned(0.86, 0.91, 10);
  for (auto _ : state) {
    const hankelmc::SolverResult res = hankelmc::complete(pinned, cfg);
    benchmark::DoNotOptimize(res.iterations);
  }
}

void BM_oracle_n2(benchmark::State& state) {
  const Eigen::VectorXd pinned = pole_pinned(0.3, 2);
  for (auto _ : state) {
    const hankelmc::HankelSpec best = hankelmc::oracle_complete(pinned);
    benchmark::DoNotOptimize(best.antidiag(2));
  }
}

}  // namespace

BENCHMARK(BM_complete_single_pole)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_complete_two_pole_hard)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_n2)->Unit(benchmark::kMillisecond);
