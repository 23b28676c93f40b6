// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "simt/csr.hpp"
#include "simt/elem_kind.hpp"
#include "simt/executor.hpp"

namespace simt {

enum class Method { Jacobi, GaussSeidel, CG, GMRES, BiCGSTAB };

std::string_view to_string(Method method) noexcept;
/// Case-insensitive; accepts "jacobi", "gauss-seidel"/"gs", "cg", "gmres", "bicgstab".
std::optional<Method> parse_method(std::string_view text) noexcept;

/// The host/device solve flow, in execution order.
enum class FlowStep : std::uint8_t {
  HostAlloc,    // allocate matrices and vectors in host memory
  HostInit,     // initialize them
  DeviceAlloc,  // allocate their device counterparts
  CopyIn,       // host -> device
  GridBlocks,   // grid layout: number of blocks
  GridThreads,  // grid layout: threads per block
  Execute,      // kernel iterations
  CopyBack,     // device -> host
  Cleanup,      // release memory
};
inline constexpr std::size_t kFlowSteps = 9;

std::string_view describe(FlowStep step) noexcept;

struct SolverConfig {
  Method method = Method::CG;
  double tol = 1e-6;         // on ||b - A x||_2 / ||b||_2
  std::size_t max_iter = 0;  // 0 selects 10 * n
  std::size_t restart = 30;  // GMRES only
  ElemKind kind = ElemKind::F64;
  std::uint32_t block_size = 256;
};

struct SolverReport {
  Method method = Method::CG;
  ElemKind kind = ElemKind::F64;
  std::size_t n = 0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t max_iter = 0;
  /// Relative residual of x_0, x_1, ..., x_k. Entries are true residuals
  /// except GMRES inner steps, which carry the least-squares estimate; the
  /// last entry is always a true residual.
  std::vector<double> residual_history;
  std::array<double, kFlowSteps> step_seconds{};
  std::size_t grid_blocks = 0;
  std::size_t threads_per_block = 0;

  double final_residual() const { return residual_history.back(); }
  double seconds(FlowStep step) const { return step_seconds[static_cast<std::size_t>(step)]; }
  /// Copy-in + kernels + copy-back.
  double device_seconds() const;
  double total_seconds() const;
};

struct SolveResult {
  std::vector<double> x;
  SolverReport report;
};

/// Absolute threshold below which a Krylov denominator counts as breakdown.
double breakdown_threshold(ElemKind kind) noexcept;

/// Runs `cfg.method` on the simulated device starting from x_0 = 0.
/// Non-convergence is reported, not thrown. Throws DimensionMismatch,
/// ZeroDiagonal (Jacobi, Gauss-Seidel), NotSymmetric (CG), Breakdown (CG,
/// BiCGSTAB, GMRES), InvalidArgument for a bad config.
SolveResult solve(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                  const SolverConfig& cfg);

SolveResult jacobi_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                           SolverConfig cfg);
SolveResult gauss_seidel_iterate(Executor& exec, const CsrMatrix<double>& a,
                                 std::span<const double> b, SolverConfig cfg);
SolveResult cg_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                       SolverConfig cfg);
SolveResult gmres_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                          SolverConfig cfg);
SolveResult bicgstab_iterate(Executor& exec, const CsrMatrix<double>& a,
                             std::span<const double> b, SolverConfig cfg);

/// Pre-flight checks shared by the device and reference solvers.
void check_system(const CsrMatrix<double>& a, std::span<const double> b, const SolverConfig& cfg);

}  // namespace simt
