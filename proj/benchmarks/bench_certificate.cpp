#include <benchmark/benchmark.h>

#include <hankelmc/certificate.hpp>

namespace {

void BM_build_certificate(benchmark::State& state) {
  const hankelmc::CertificateContext ctx(0.7,
                                         static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const hankelmc::CertificateSet cert = hankelmc::build_certificate(ctx);
    benchmark::DoNotOptimize(cert.m0_norm_gap);
  }
}

void BM_verify_facts(benchmark::State& state) {
  const hankelmc::CertificateContext ctx(0.7,
                                         static_cast<int>(state.range(0)));
  const Eigen::MatrixXd delta = hankelmc::build_delta(ctx);
  const hankelmc::ProjectorPair pair = hankelmc::split_projectors(ctx, delta);
  for (auto _ : state) {
    const hankelmc::FactResiduals facts = hankelmc::verify_facts(ctx, pair);
    benchmark::DoNotOptimize(facts.fact1);
  }
}

}  // namespace

BENCHMARK(BM_build_certificate)->Arg(10)->Arg(20)->Arg(64);
BENCHMARK(BM_verify_facts)->Arg(10)->Arg(20)->Arg(64);
