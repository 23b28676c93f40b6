// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "simt/csr.hpp"
#include "simt/solvers.hpp"

// Plain single-threaded host implementations. They are the sequential
// baseline for benchmarks and never touch the simulated device.
namespace simt::reference {

template <typename T>
void axpy(T alpha, std::span<const T> x, std::span<T> y);

/// Left-to-right sum.
template <typename T>
T dot(std::span<const T> x, std::span<const T> y);

template <typename T>
void csr_spmv(const CsrMatrix<T>& a, std::span<const T> x, std::span<T> y);

/// C <- alpha*A*B + beta*C, i-k-j loop order.
template <typename T>
void gemm(T alpha, const DenseMatrix<T>& a, const DenseMatrix<T>& b, T beta, DenseMatrix<T>& c);

/// Same methods, stopping rule and x_0 as the device solvers. Only the
/// Execute step of the report's timings is populated.
SolveResult solve(const CsrMatrix<double>& a, std::span<const double> b, const SolverConfig& cfg);

}  // namespace simt::reference
