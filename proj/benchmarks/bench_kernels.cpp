#include <benchmark/benchmark.h>

#include "hsgen/builder.hpp"
#include "hsgen/executor.hpp"
#include "hsgen/kernels.hpp"
#include "hsgen/probgen.hpp"

namespace {

using namespace hsgen;

CMatrix gaussian(std::size_t r, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix m(r, c);
  for (auto& z : m.data()) z = rng.complex_gaussian();
  return m;
}

void set_flops(benchmark::State& state, double per_iter) {
  state.counters["GFlops/s"] =
      benchmark::Counter(per_iter * 1e-9 * double(state.iterations()), benchmark::Counter::kIsRate);
}

// n_l x n_g per-atom products, as in the per-atom loops.
void BM_GemmAtom(benchmark::State& state) {
  const auto nl = std::size_t(state.range(0)), ng = std::size_t(state.range(1));
  const CMatrix t = gaussian(nl, nl, 1), a = gaussian(nl, ng, 2);
  CMatrix z(nl, ng);
  for (auto _ : state) {
    gemm(1.0, Op::C, t, Op::N, a, 0.0, z);
    benchmark::DoNotOptimize(z.data().data());
  }
  set_flops(state, double(flops_of(KernelKind::Gemm, {nl, ng, nl})));
}
BENCHMARK(BM_GemmAtom)->Args({49, 512})->Args({121, 512});

void BM_HemmAtom(benchmark::State& state) {
  const auto nl = std::size_t(state.range(0)), ng = std::size_t(state.range(1));
  const CMatrix t = gaussian(nl, nl, 3), b = gaussian(nl, ng, 4);
  CMatrix z(nl, ng);
  for (auto _ : state) {
    hemm_left(0.5, t, b, 1.0, z);
    benchmark::DoNotOptimize(z.data().data());
  }
  set_flops(state, double(flops_of(KernelKind::Hemm, {nl, ng, 0})));
}
BENCHMARK(BM_HemmAtom)->Args({49, 512});

void BM_Herk(benchmark::State& state) {
  const auto n = std::size_t(state.range(0)), k = std::size_t(state.range(1));
  const CMatrix a = gaussian(k, n, 5);
  CMatrix c(n, n);
  for (auto _ : state) {
    herk(1.0, a, 0.0, c);
    benchmark::DoNotOptimize(c.data().data());
  }
  set_flops(state, double(flops_of(KernelKind::Herk, {0, n, k})));
}
BENCHMARK(BM_Herk)->Args({256, 196})->Args({512, 392});

void BM_Her2k(benchmark::State& state) {
  const auto n = std::size_t(state.range(0)), k = std::size_t(state.range(1));
  const CMatrix z = gaussian(k, n, 6), b = gaussian(k, n, 7);
  CMatrix c(n, n);
  for (auto _ : state) {
    her2k(1.0, z, b, 0.0, c);
    benchmark::DoNotOptimize(c.data().data());
  }
  set_flops(state, double(flops_of(KernelKind::Her2k, {0, n, k})));
}
BENCHMARK(BM_Her2k)->Args({256, 196})->Args({512, 392});

void BM_Potrf(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  Rng rng(8);
  const std::vector<double> d(n, 1.0);
  const CMatrix t = hermitian_from_spectrum(random_unitary(n, rng), d);
  for (auto _ : state) benchmark::DoNotOptimize(potrf_lower(t));
  set_flops(state, double(flops_of(KernelKind::Potrf, {n, 0, 0})));
}
BENCHMARK(BM_Potrf)->Arg(49)->Arg(121);

// Tiled herk across worker counts; range(0) = workers.
void BM_PartitionedHerk(benchmark::State& state) {
  const std::size_t n = 768, k = 392;
  const CMatrix a = gaussian(k, n, 9);
  CMatrix c(n, n);
  ExecPolicy pol;
  pol.workers = std::size_t(state.range(0));
  pol.tile = 128;
  for (auto _ : state) {
    run_partitioned(HerkCall{1.0, a, 0.0}, c, pol);
    benchmark::DoNotOptimize(c.data().data());
  }
  set_flops(state, double(flops_of(KernelKind::Herk, {0, n, k})));
}
BENCHMARK(BM_PartitionedHerk)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_BuildHs(benchmark::State& state) {
  ProblemSpec s;
  s.dims = {std::size_t(state.range(0)), 49, std::size_t(state.range(1))};
  s.seed = 10;
  s.nonhpd_fraction = 0.25;
  const ProblemInstance p = generate(s);
  std::uint64_t flops = 0;
  for (auto _ : state) {
    auto out = build_hs(p, {});
    flops = out.ledger.total_flops();
    benchmark::DoNotOptimize(out.h.matrix.data().data());
  }
  set_flops(state, double(flops));
}
BENCHMARK(BM_BuildHs)->Args({8, 256})->Args({16, 512})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
