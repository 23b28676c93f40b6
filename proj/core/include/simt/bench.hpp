// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "simt/csr.hpp"
#include "simt/elem_kind.hpp"
#include "simt/solvers.hpp"

namespace simt {

/// One CSV row. `workers == 0` marks the sequential host reference, which
/// is its own baseline (speedup 1). Simulator rows carry
/// speedup = T(p=1) / T(p).
struct BenchRecord {
  std::string workload;
  std::string method;
  std::size_t n = 0;
  ElemKind kind = ElemKind::F64;
  unsigned workers = 0;
  double wall_seconds = 0.0;
  double speedup = 1.0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "workload,method,n,kind,workers,wall_seconds,speedup";

struct BenchOptions {
  std::vector<unsigned> workers{1};
  std::size_t repetitions = 3;
  ElemKind kind = ElemKind::F64;
  std::uint64_t seed = 42;
  bool include_reference = true;
};

double median(std::vector<double> samples);

/// n x n GEMM (alpha = 1, beta = 0) on seeded random inputs. Timed region:
/// copy-in of A, B, C, the kernel, and copy-back of C.
std::vector<BenchRecord> bench_gemm(std::size_t n, const BenchOptions& opts);

/// Solver runs on a fixed system. Timed region: copy-in + kernel iterations
/// + copy-back, taken from the solver's per-step timings.
std::vector<BenchRecord> bench_solvers(const std::string& workload, const CsrMatrix<double>& a,
                                       std::span<const double> b,
                                       std::span<const Method> methods, SolverConfig base,
                                       const BenchOptions& opts);

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);

}  // namespace simt
