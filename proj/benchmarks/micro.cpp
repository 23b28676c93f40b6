// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "simt/csr.hpp"
#include "simt/device.hpp"
#include "simt/executor.hpp"
#include "simt/generators.hpp"
#include "simt/kernels.hpp"
#include "simt/reference.hpp"
#include "simt/solvers.hpp"

namespace {

namespace k = simt::kernels;

// Arguments: problem size, worker count.
void workers_sweep(benchmark::internal::Benchmark* b, std::initializer_list<long> sizes) {
  for (long n : sizes)
    for (long p : {1, 2, 4, 8}) b->Args({n, p});
  b->ArgNames({"n", "p"})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  simt::Device dev;
  simt::Executor ex(dev, simt::ExecutorOptions{static_cast<unsigned>(state.range(1))});
  const auto a = simt::upload(dev, simt::DenseMatrix<double>(n, n, simt::random_vector(n * n, 1)));
  const auto b = simt::upload(dev, simt::DenseMatrix<double>(n, n, simt::random_vector(n * n, 2)));
  const auto c = simt::upload(dev, simt::DenseMatrix<double>(n, n));
  for (auto _ : state) k::gemm(ex, 1.0, a, b, 0.0, c);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}
BENCHMARK(BM_Gemm)->Apply([](auto* b) { workers_sweep(b, {64, 256}); });

void BM_GemmReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const simt::DenseMatrix<double> a(n, n, simt::random_vector(n * n, 1));
  const simt::DenseMatrix<double> b(n, n, simt::random_vector(n * n, 2));
  simt::DenseMatrix<double> c(n, n);
  for (auto _ : state) {
    simt::reference::gemm(1.0, a, b, 0.0, c);
    benchmark::DoNotOptimize(c.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}
BENCHMARK(BM_GemmReference)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_Dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  simt::Device dev;
  simt::Executor ex(dev, simt::ExecutorOptions{static_cast<unsigned>(state.range(1))});
  const auto xv = simt::random_vector(n, 3);
  const auto x = dev.alloc_copy(std::span<const double>(xv));
  for (auto _ : state) benchmark::DoNotOptimize(k::dot(ex, x, x));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Dot)->Apply([](auto* b) { workers_sweep(b, {1 << 12, 1 << 18}); });

void BM_Spmv(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  simt::Device dev;
  simt::Executor ex(dev, simt::ExecutorOptions{static_cast<unsigned>(state.range(1))});
  const auto a = simt::upload(dev, simt::gen_poisson(side));
  const auto xv = simt::random_vector(side * side, 4);
  const auto x = dev.alloc_copy(std::span<const double>(xv));
  const auto y = dev.alloc(side * side, simt::ElemKind::F64);
  for (auto _ : state) k::csr_spmv(ex, a, x, y);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(side * side));
}
BENCHMARK(BM_Spmv)->Apply([](auto* b) { workers_sweep(b, {64, 256}); });

// An empty single-phase kernel: per-launch cost of validation and dispatch.
void BM_LaunchOverhead(benchmark::State& state) {
  simt::Device dev;
  simt::Executor ex(dev, simt::ExecutorOptions{static_cast<unsigned>(state.range(1))});
  const simt::Kernel noop{
      "noop", {[](const simt::ThreadCtx&, const simt::KernelArgs&, simt::SharedScratch&) {}}};
  const simt::LaunchConfig cfg{simt::Dim3{static_cast<std::uint32_t>(state.range(0))},
                               simt::Dim3{32}};
  for (auto _ : state) ex.launch(noop, cfg, {});
}
BENCHMARK(BM_LaunchOverhead)->Apply([](auto* b) { workers_sweep(b, {1, 64}); });

void BM_SolveCg(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto a = simt::gen_poisson(side);
  const auto b = simt::random_vector(side * side, 42);
  simt::Device dev;
  simt::Executor ex(dev, simt::ExecutorOptions{static_cast<unsigned>(state.range(1))});
  simt::SolverConfig cfg;
  cfg.tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(simt::solve(ex, a, b, cfg));
}
BENCHMARK(BM_SolveCg)->Apply([](auto* b) { workers_sweep(b, {32}); });

}  // namespace

BENCHMARK_MAIN();
