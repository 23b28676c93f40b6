// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "simt/csr.hpp"
#include "simt/device.hpp"
#include "simt/executor.hpp"

// Data-parallel primitives written as phase-structured kernels. Each routine
// dispatches on the buffers' element kind (f32 or f64); mixing kinds is a
// KindMismatch error. Non-reducing kernels accumulate per element in a fixed
// sequential order, so they match a plain host loop bit for bit.
namespace simt::kernels {

inline constexpr std::uint32_t kDefaultBlockSize = 256;

/// y <- alpha*x + y
void axpy(Executor& exec, double alpha, const DeviceBuffer& x, const DeviceBuffer& y,
          std::uint32_t block_size = kDefaultBlockSize);

/// y <- alpha*x + beta*y
void axpby(Executor& exec, double alpha, const DeviceBuffer& x, double beta,
           const DeviceBuffer& y, std::uint32_t block_size = kDefaultBlockSize);

/// x <- alpha*x
void scal(Executor& exec, double alpha, const DeviceBuffer& x,
          std::uint32_t block_size = kDefaultBlockSize);

/// dst <- src
void copy(Executor& exec, const DeviceBuffer& src, const DeviceBuffer& dst,
          std::uint32_t block_size = kDefaultBlockSize);

/// Sum of x[i]*y[i]. Each block reduces its slice with a shared-memory tree;
/// block partials are then combined on the host in ascending block order,
/// so the result depends only on the inputs and the block size.
double dot(Executor& exec, const DeviceBuffer& x, const DeviceBuffer& y,
           std::uint32_t block_size = kDefaultBlockSize);

double nrm2(Executor& exec, const DeviceBuffer& x, std::uint32_t block_size = kDefaultBlockSize);

/// y <- A x, one row per logical thread.
void csr_spmv(Executor& exec, const DeviceCsr& a, const DeviceBuffer& x, const DeviceBuffer& y,
              std::uint32_t block_size = kDefaultBlockSize);
DeviceBuffer csr_spmv(Executor& exec, const DeviceCsr& a, const DeviceBuffer& x,
                      std::uint32_t block_size = kDefaultBlockSize);

/// r <- b - A x, one row per logical thread.
void residual(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b, const DeviceBuffer& x,
              const DeviceBuffer& r, std::uint32_t block_size = kDefaultBlockSize);

/// C <- alpha*A*B + beta*C with one output element per logical thread on a
/// 2D grid of `tile` x `tile` blocks. beta == 0 never reads C; alpha == 0
/// only scales C.
void gemm(Executor& exec, double alpha, const DeviceMatrix& a, const DeviceMatrix& b,
          double beta, const DeviceMatrix& c, std::uint32_t tile = 16);

/// x_new[i] = (b[i] - sum_{j != i} A[i,j]*x_old[j]) / A[i,i] for every row.
/// Throws ZeroDiagonalError naming the row when A[i,i] is absent or zero.
void jacobi_sweep(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                  const DeviceBuffer& x_old, const DeviceBuffer& x_new,
                  std::uint32_t block_size = kDefaultBlockSize);
DeviceBuffer jacobi_sweep(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                          const DeviceBuffer& x_old,
                          std::uint32_t block_size = kDefaultBlockSize);

/// In-place update of one row: x[row] = (b[row] - sum_{j != row} A[row,j]*x[j]) / A[row,row].
/// A natural-order Gauss-Seidel sweep is this kernel launched for rows 0..n-1.
void gauss_seidel_row(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                      const DeviceBuffer& x, std::size_t row);

}  // namespace simt::kernels
