// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/kernels.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace simt::kernels {

namespace {

void require_precision(ElemKind kind, const char* op) {
  if (kind != ElemKind::F32 && kind != ElemKind::F64) {
    throw Error(ErrorCode::KindMismatch, std::string(op) + ": expected f32 or f64 buffer");
  }
}

void require_same_shape(const DeviceBuffer& x, const DeviceBuffer& y, const char* op) {
  require_precision(x.kind, op);
  if (x.kind != y.kind) {
    throw Error(ErrorCode::KindMismatch, std::string(op) + ": operands have kinds " +
                                             std::string(to_string(x.kind)) + " and " +
                                             std::string(to_string(y.kind)));
  }
  if (x.len != y.len) {
    throw Error(ErrorCode::LengthMismatch, std::string(op) + ": operand lengths " +
                                               std::to_string(x.len) + " and " +
                                               std::to_string(y.len));
  }
}

void require_csr_operands(const DeviceCsr& a, const DeviceBuffer& x, const DeviceBuffer& y,
                          const char* op) {
  require_precision(a.kind(), op);
  if (x.kind != a.kind() || y.kind != a.kind()) {
    throw Error(ErrorCode::KindMismatch, std::string(op) + ": vector kind differs from matrix");
  }
  if (x.len != a.n_cols || y.len != a.n_rows) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": matrix is " + std::to_string(a.n_rows) + "x" +
                    std::to_string(a.n_cols) + ", vectors have lengths " +
                    std::to_string(x.len) + " and " + std::to_string(y.len));
  }
}

void require_square(const DeviceCsr& a, const char* op) {
  if (a.n_rows != a.n_cols) {
    throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": matrix must be square");
  }
}

// Kernels with a fixed phase list are built once per element type.

template <typename T>
const Kernel& axpy_kernel() {
  static const Kernel k{"axpy", {[](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch&) {
                          const auto x = args.global<T>(1);
                          const auto y = args.global<T>(2);
                          if (ctx.gid >= y.size()) return;
                          const T alpha = static_cast<T>(args.scalar(0));
                          y.store(ctx, ctx.gid, alpha * x.load(ctx, ctx.gid) + y.load(ctx, ctx.gid));
                        }}};
  return k;
}

template <typename T>
const Kernel& axpby_kernel() {
  static const Kernel k{"axpby", {[](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch&) {
                          const auto x = args.global<T>(1);
                          const auto y = args.global<T>(3);
                          if (ctx.gid >= y.size()) return;
                          const T alpha = static_cast<T>(args.scalar(0));
                          const T beta = static_cast<T>(args.scalar(2));
                          y.store(ctx, ctx.gid,
                                  alpha * x.load(ctx, ctx.gid) + beta * y.load(ctx, ctx.gid));
                        }}};
  return k;
}

template <typename T>
const Kernel& scal_kernel() {
  static const Kernel k{"scal", {[](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch&) {
                          const auto x = args.global<T>(1);
                          if (ctx.gid >= x.size()) return;
                          const T alpha = static_cast<T>(args.scalar(0));
                          x.store(ctx, ctx.gid, alpha * x.load(ctx, ctx.gid));
                        }}};
  return k;
}

template <typename T>
const Kernel& copy_kernel() {
  static const Kernel k{"copy", {[](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch&) {
                          const auto src = args.global<T>(0);
                          const auto dst = args.global<T>(1);
                          if (ctx.gid >= dst.size()) return;
                          dst.store(ctx, ctx.gid, src.load(ctx, ctx.gid));
                        }}};
  return k;
}

// Sequential row dot product over the stored entries of one CSR row.
template <typename T>
T row_sum(const ThreadCtx& ctx, const GlobalView<index_t>& row_ptr,
          const GlobalView<index_t>& col_idx, const GlobalView<T>& vals, const GlobalView<T>& x,
          std::size_t row) {
  T sum = T(0);
  const index_t end = row_ptr.load(ctx, row + 1);
  for (index_t k = row_ptr.load(ctx, row); k < end; ++k) {
    const auto j = static_cast<std::size_t>(col_idx.load(ctx, static_cast<std::size_t>(k)));
    sum += vals.load(ctx, static_cast<std::size_t>(k)) * x.load(ctx, j);
  }
  return sum;
}

// Sum over the off-diagonal entries of a row plus the diagonal value; throws
// when the diagonal is absent or zero.
template <typename T>
T off_diagonal_sum(const ThreadCtx& ctx, const GlobalView<index_t>& row_ptr,
                   const GlobalView<index_t>& col_idx, const GlobalView<T>& vals,
                   const GlobalView<T>& x, std::size_t row, T& diag) {
  T sum = T(0);
  bool found = false;
  const index_t end = row_ptr.load(ctx, row + 1);
  for (index_t k = row_ptr.load(ctx, row); k < end; ++k) {
    const auto j = static_cast<std::size_t>(col_idx.load(ctx, static_cast<std::size_t>(k)));
    const T v = vals.load(ctx, static_cast<std::size_t>(k));
    if (j == row) {
      diag = v;
      found = true;
    } else {
      sum += v * x.load(ctx, j);
    }
  }
  if (!found || diag == T(0)) throw ZeroDiagonalError(row);
  return sum;
}

template <typename T>
const Kernel& spmv_kernel() {
  static const Kernel k{"csr_spmv", {[](const ThreadCtx& ctx, const KernelArgs& args,
                                        SharedScratch&) {
                          const auto y = args.global<T>(4);
                          if (ctx.gid >= y.size()) return;
                          const T sum = row_sum(ctx, args.global<index_t>(0),
                                                args.global<index_t>(1), args.global<T>(2),
                                                args.global<T>(3), ctx.gid);
                          y.store(ctx, ctx.gid, sum);
                        }}};
  return k;
}

template <typename T>
const Kernel& residual_kernel() {
  static const Kernel k{"residual", {[](const ThreadCtx& ctx, const KernelArgs& args,
                                        SharedScratch&) {
                          const auto r = args.global<T>(5);
                          if (ctx.gid >= r.size()) return;
                          const T ax = row_sum(ctx, args.global<index_t>(0),
                                               args.global<index_t>(1), args.global<T>(2),
                                               args.global<T>(4), ctx.gid);
                          r.store(ctx, ctx.gid, args.global<T>(3).load(ctx, ctx.gid) - ax);
                        }}};
  return k;
}

template <typename T>
const Kernel& jacobi_kernel() {
  static const Kernel k{"jacobi_sweep", {[](const ThreadCtx& ctx, const KernelArgs& args,
                                            SharedScratch&) {
                          const auto x_new = args.global<T>(5);
                          if (ctx.gid >= x_new.size()) return;
                          T diag = T(0);
                          const T sum = off_diagonal_sum(ctx, args.global<index_t>(0),
                                                         args.global<index_t>(1),
                                                         args.global<T>(2), args.global<T>(4),
                                                         ctx.gid, diag);
                          x_new.store(ctx, ctx.gid,
                                      (args.global<T>(3).load(ctx, ctx.gid) - sum) / diag);
                        }}};
  return k;
}

template <typename T>
const Kernel& gauss_seidel_kernel() {
  static const Kernel k{"gauss_seidel_row", {[](const ThreadCtx& ctx, const KernelArgs& args,
                                                SharedScratch&) {
                          const auto x = args.global<T>(4);
                          const auto row = static_cast<std::size_t>(args.integer(5));
                          T diag = T(0);
                          const T sum = off_diagonal_sum(ctx, args.global<index_t>(0),
                                                         args.global<index_t>(1),
                                                         args.global<T>(2), x, row, diag);
                          x.store(ctx, row, (args.global<T>(3).load(ctx, row) - sum) / diag);
                        }}};
  return k;
}

template <typename T>
const Kernel& gemm_kernel() {
  // args: A, B, C, alpha, beta, M, K, N
  static const Kernel k{"gemm", {[](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch&) {
                          const auto m = static_cast<std::size_t>(args.integer(5));
                          const auto inner = static_cast<std::size_t>(args.integer(6));
                          const auto n = static_cast<std::size_t>(args.integer(7));
                          const std::size_t row =
                              std::size_t{ctx.block_idx.y} * ctx.block_dim.y + ctx.thread_idx.y;
                          const std::size_t col =
                              std::size_t{ctx.block_idx.x} * ctx.block_dim.x + ctx.thread_idx.x;
                          if (row >= m || col >= n) return;
                          const auto a = args.global<T>(0);
                          const auto b = args.global<T>(1);
                          const auto c = args.global<T>(2);
                          const T alpha = static_cast<T>(args.scalar(3));
                          const T beta = static_cast<T>(args.scalar(4));
                          const std::size_t at = row * n + col;
                          if (alpha == T(0)) {
                            c.store(ctx, at, beta == T(0) ? T(0) : beta * c.load(ctx, at));
                            return;
                          }
                          T sum = T(0);
                          for (std::size_t j = 0; j < inner; ++j) {
                            sum += a.load(ctx, row * inner + j) * b.load(ctx, j * n + col);
                          }
                          T value = alpha * sum;
                          if (beta != T(0)) value += beta * c.load(ctx, at);
                          c.store(ctx, at, value);
                        }}};
  return k;
}

// Block-level tree reduction of x[i]*y[i] into partials[block].
template <typename T>
Kernel dot_kernel(std::uint32_t block_size) {
  Kernel k;
  k.name = "dot";
  k.phases.push_back([](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch& shared) {
    const auto x = args.global<T>(0);
    const auto y = args.global<T>(1);
    const T v = ctx.gid < x.size() ? x.load(ctx, ctx.gid) * y.load(ctx, ctx.gid) : T(0);
    shared.view<T>().store(ctx, ctx.tid, v);
  });
  const std::uint64_t span = std::bit_ceil(std::uint64_t{block_size});
  for (std::uint64_t stride = span / 2; stride >= 1; stride /= 2) {
    k.phases.push_back([stride](const ThreadCtx& ctx, const KernelArgs&, SharedScratch& shared) {
      const std::uint64_t partner = ctx.tid + stride;
      if (ctx.tid >= stride || partner >= ctx.block_dim.volume()) return;
      const auto s = shared.view<T>();
      s.store(ctx, ctx.tid, s.load(ctx, ctx.tid) + s.load(ctx, partner));
    });
  }
  k.phases.push_back([](const ThreadCtx& ctx, const KernelArgs& args, SharedScratch& shared) {
    if (ctx.tid != 0) return;
    args.global<T>(2).store(ctx, ctx.block, shared.view<T>().load(ctx, 0));
  });
  return k;
}

template <typename T>
double dot_impl(Executor& exec, const DeviceBuffer& x, const DeviceBuffer& y,
                std::uint32_t block_size) {
  if (x.len == 0) return 0.0;
  LaunchConfig cfg = linear_config(x.len, block_size);
  cfg.shared_elems = block_size;
  cfg.kind = kind_of<T>();
  Device& dev = exec.device();
  ScopedBuffer partials(dev, cfg.grid.x, kind_of<T>());
  exec.launch(dot_kernel<T>(block_size), cfg, {x, y, partials.get()});
  const std::vector<T> host = dev.read<T>(partials.get());
  T total = T(0);
  for (const T p : host) total += p;
  return static_cast<double>(total);
}

template <typename Fn>
decltype(auto) by_kind(ElemKind kind, Fn&& fn) {
  return dispatch_precision(kind, std::forward<Fn>(fn));
}

}  // namespace

void axpy(Executor& exec, double alpha, const DeviceBuffer& x, const DeviceBuffer& y,
          std::uint32_t block_size) {
  require_same_shape(x, y, "axpy");
  if (y.len == 0) return;
  by_kind(y.kind, [&](auto tag) {
    using T = decltype(tag);
    exec.launch(axpy_kernel<T>(), linear_config(y.len, block_size), {alpha, x, y});
  });
}

void axpby(Executor& exec, double alpha, const DeviceBuffer& x, double beta,
           const DeviceBuffer& y, std::uint32_t block_size) {
  require_same_shape(x, y, "axpby");
  if (y.len == 0) return;
  by_kind(y.kind, [&](auto tag) {
    using T = decltype(tag);
    exec.launch(axpby_kernel<T>(), linear_config(y.len, block_size), {alpha, x, beta, y});
  });
}

void scal(Executor& exec, double alpha, const DeviceBuffer& x, std::uint32_t block_size) {
  require_precision(x.kind, "scal");
  if (x.len == 0) return;
  by_kind(x.kind, [&](auto tag) {
    using T = decltype(tag);
    exec.launch(scal_kernel<T>(), linear_config(x.len, block_size), {alpha, x});
  });
}

void copy(Executor& exec, const DeviceBuffer& src, const DeviceBuffer& dst,
          std::uint32_t block_size) {
  require_same_shape(src, dst, "copy");
  if (dst.len == 0) return;
  by_kind(dst.kind, [&](auto tag) {
    using T = decltype(tag);
    exec.launch(copy_kernel<T>(), linear_config(dst.len, block_size), {src, dst});
  });
}

double dot(Executor& exec, const DeviceBuffer& x, const DeviceBuffer& y,
           std::uint32_t block_size) {
  require_same_shape(x, y, "dot");
  return by_kind(x.kind, [&](auto tag) {
    return dot_impl<decltype(tag)>(exec, x, y, block_size);
  });
}

double nrm2(Executor& exec, const DeviceBuffer& x, std::uint32_t block_size) {
  require_precision(x.kind, "nrm2");
  return by_kind(x.kind, [&](auto tag) {
    using T = decltype(tag);
    const T sq = static_cast<T>(dot_impl<T>(exec, x, x, block_size));
    return static_cast<double>(std::sqrt(sq));
  });
}

void csr_spmv(Executor& exec, const DeviceCsr& a, const DeviceBuffer& x, const DeviceBuffer& y,
              std::uint32_t block_size) {
  require_csr_operands(a, x, y, "csr_spmv");
  if (a.n_rows == 0) return;
  by_kind(a.kind(), [&](auto tag) {
    using T = decltype(tag);
    exec.launch(spmv_kernel<T>(), linear_config(a.n_rows, block_size),
                {a.row_ptr, a.col_idx, a.vals, x, y});
  });
}

DeviceBuffer csr_spmv(Executor& exec, const DeviceCsr& a, const DeviceBuffer& x,
                      std::uint32_t block_size) {
  require_precision(a.kind(), "csr_spmv");
  ScopedBuffer y(exec.device(), a.n_rows, a.kind());
  csr_spmv(exec, a, x, y.get(), block_size);
  return y.release();
}

void residual(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b, const DeviceBuffer& x,
              const DeviceBuffer& r, std::uint32_t block_size) {
  require_csr_operands(a, x, r, "residual");
  require_same_shape(b, r, "residual");
  if (a.n_rows == 0) return;
  by_kind(a.kind(), [&](auto tag) {
    using T = decltype(tag);
    exec.launch(residual_kernel<T>(), linear_config(a.n_rows, block_size),
                {a.row_ptr, a.col_idx, a.vals, b, x, r});
  });
}

void gemm(Executor& exec, double alpha, const DeviceMatrix& a, const DeviceMatrix& b,
          double beta, const DeviceMatrix& c, std::uint32_t tile) {
  require_precision(a.kind(), "gemm");
  if (b.kind() != a.kind() || c.kind() != a.kind()) {
    throw Error(ErrorCode::KindMismatch, "gemm: operand kinds differ");
  }
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols ||
      a.buf.len != a.rows * a.cols || b.buf.len != b.rows * b.cols ||
      c.buf.len != c.rows * c.cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "gemm: cannot multiply " + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                    " by " + std::to_string(b.rows) + "x" + std::to_string(b.cols) + " into " +
                    std::to_string(c.rows) + "x" + std::to_string(c.cols));
  }
  if (c.rows == 0 || c.cols == 0) return;
  if (tile == 0 || std::uint64_t{tile} * tile > kMaxThreadsPerBlock) {
    throw Error(ErrorCode::BlockTooLarge, "gemm: tile " + std::to_string(tile) + " invalid");
  }
  LaunchConfig cfg;
  cfg.block = Dim3{tile, tile, 1};
  cfg.grid = Dim3{static_cast<std::uint32_t>((c.cols + tile - 1) / tile),
                  static_cast<std::uint32_t>((c.rows + tile - 1) / tile), 1};
  by_kind(a.kind(), [&](auto tag) {
    using T = decltype(tag);
    exec.launch(gemm_kernel<T>(), cfg,
                {a.buf, b.buf, c.buf, alpha, beta, static_cast<index_t>(a.rows),
                 static_cast<index_t>(a.cols), static_cast<index_t>(b.cols)});
  });
}

void jacobi_sweep(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                  const DeviceBuffer& x_old, const DeviceBuffer& x_new,
                  std::uint32_t block_size) {
  require_square(a, "jacobi_sweep");
  require_csr_operands(a, x_old, x_new, "jacobi_sweep");
  require_same_shape(b, x_new, "jacobi_sweep");
  if (a.n_rows == 0) return;
  by_kind(a.kind(), [&](auto tag) {
    using T = decltype(tag);
    exec.launch(jacobi_kernel<T>(), linear_config(a.n_rows, block_size),
                {a.row_ptr, a.col_idx, a.vals, b, x_old, x_new});
  });
}

DeviceBuffer jacobi_sweep(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                          const DeviceBuffer& x_old, std::uint32_t block_size) {
  require_precision(a.kind(), "jacobi_sweep");
  ScopedBuffer x_new(exec.device(), a.n_rows, a.kind());
  jacobi_sweep(exec, a, b, x_old, x_new.get(), block_size);
  return x_new.release();
}

void gauss_seidel_row(Executor& exec, const DeviceCsr& a, const DeviceBuffer& b,
                      const DeviceBuffer& x, std::size_t row) {
  require_square(a, "gauss_seidel_row");
  require_csr_operands(a, x, b, "gauss_seidel_row");
  if (row >= a.n_rows) {
    throw Error(ErrorCode::IndexOutOfBounds, "gauss_seidel_row: row " + std::to_string(row));
  }
  LaunchConfig cfg;  // one block of one thread
  by_kind(a.kind(), [&](auto tag) {
    using T = decltype(tag);
    exec.launch(gauss_seidel_kernel<T>(), cfg,
                {a.row_ptr, a.col_idx, a.vals, b, x, static_cast<index_t>(row)});
  });
}

}  // namespace simt::kernels
