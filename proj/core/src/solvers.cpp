// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "simt/error.hpp"
#include "simt/kernels.hpp"

namespace simt {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Jacobi: return "jacobi";
    case Method::GaussSeidel: return "gauss-seidel";
    case Method::CG: return "cg";
    case Method::GMRES: return "gmres";
    case Method::BiCGSTAB: return "bicgstab";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "jacobi") return Method::Jacobi;
  if (key == "gauss-seidel" || key == "gauss_seidel" || key == "gs") return Method::GaussSeidel;
  if (key == "cg") return Method::CG;
  if (key == "gmres") return Method::GMRES;
  if (key == "bicgstab") return Method::BiCGSTAB;
  return std::nullopt;
}

std::string_view describe(FlowStep step) noexcept {
  switch (step) {
    case FlowStep::HostAlloc: return "host-alloc";
    case FlowStep::HostInit: return "host-init";
    case FlowStep::DeviceAlloc: return "device-alloc";
    case FlowStep::CopyIn: return "copy-in";
    case FlowStep::GridBlocks: return "grid-blocks";
    case FlowStep::GridThreads: return "grid-threads";
    case FlowStep::Execute: return "execute";
    case FlowStep::CopyBack: return "copy-back";
    case FlowStep::Cleanup: return "cleanup";
  }
  return "?";
}

double SolverReport::device_seconds() const {
  return seconds(FlowStep::CopyIn) + seconds(FlowStep::Execute) + seconds(FlowStep::CopyBack);
}

double SolverReport::total_seconds() const {
  double total = 0.0;
  for (const double s : step_seconds) total += s;
  return total;
}

double breakdown_threshold(ElemKind kind) noexcept {
  return kind == ElemKind::F32 ? 1e-20 : 1e-30;
}

void check_system(const CsrMatrix<double>& a, std::span<const double> b, const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  if (cfg.method == Method::GMRES && cfg.restart == 0) {
    throw Error(ErrorCode::InvalidArgument, "GMRES restart length must be at least 1");
  }
  if (cfg.kind != ElemKind::F32 && cfg.kind != ElemKind::F64) {
    throw Error(ErrorCode::InvalidArgument, "solver precision must be f32 or f64");
  }
  if (cfg.block_size == 0 || cfg.block_size > kMaxThreadsPerBlock) {
    throw Error(ErrorCode::BlockTooLarge,
                "threads per block must be in [1, 1024], got " + std::to_string(cfg.block_size));
  }
  if (!a.square()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be square, got " +
                                                  std::to_string(a.n_rows) + "x" +
                                                  std::to_string(a.n_cols));
  }
  if (b.size() != a.n_rows) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has length " +
                                                  std::to_string(b.size()) + ", expected " +
                                                  std::to_string(a.n_rows));
  }
  validate(a);
  if (cfg.method == Method::Jacobi || cfg.method == Method::GaussSeidel) {
    for (std::size_t i = 0; i < a.n_rows; ++i) {
      const index_t at = find_diagonal(a, i);
      if (at < 0 || a.vals[static_cast<std::size_t>(at)] == 0.0) throw ZeroDiagonalError(i);
    }
  }
  if (cfg.method == Method::CG && !is_symmetric(a)) {
    throw Error(ErrorCode::NotSymmetric, "CG requires a symmetric matrix");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

class StepTimer {
 public:
  explicit StepTimer(std::array<double, kFlowSteps>& out) : out_(out) {}

  void begin(FlowStep step) {
    finish();
    current_ = static_cast<std::size_t>(step);
    start_ = Clock::now();
  }
  void finish() {
    if (current_ < kFlowSteps) {
      out_[current_] += std::chrono::duration<double>(Clock::now() - start_).count();
    }
    current_ = kFlowSteps;
  }

 private:
  std::array<double, kFlowSteps>& out_;
  std::size_t current_ = kFlowSteps;
  Clock::time_point start_;
};

[[noreturn]] void breakdown(Method method, const std::string& what, std::size_t iteration) {
  throw Error(ErrorCode::Breakdown, std::string(to_string(method)) + " breakdown at iteration " +
                                        std::to_string(iteration) + ": " + what);
}

std::size_t work_vectors(const SolverConfig& cfg) {
  switch (cfg.method) {
    case Method::Jacobi: return 2;        // x_new, residual
    case Method::GaussSeidel: return 1;   // residual
    case Method::CG: return 4;            // r, p, Ap, residual
    case Method::BiCGSTAB: return 7;      // r, r_hat, p, v, s, t, residual
    case Method::GMRES: return cfg.restart + 2;  // basis V_0..V_m, w
  }
  return 0;
}

// Device state for one solve. Everything the kernels touch lives here.
struct Workspace {
  Executor& exec;
  DeviceCsr a;
  DeviceBuffer b;
  DeviceBuffer x;
  std::vector<DeviceBuffer> work;
  std::uint32_t block;
  double b_norm = 0.0;

  double true_residual(const DeviceBuffer& scratch) {
    kernels::residual(exec, a, b, x, scratch, block);
    return kernels::nrm2(exec, scratch, block) / b_norm;
  }
};

struct Outcome {
  bool converged = false;
  std::size_t iterations = 0;
};

Outcome run_jacobi(Workspace& ws, const SolverConfig& cfg, std::size_t max_iter,
                   std::vector<double>& history) {
  DeviceBuffer x_new = ws.work[0];
  const DeviceBuffer& r = ws.work[1];
  for (std::size_t k = 1; k <= max_iter; ++k) {
    kernels::jacobi_sweep(ws.exec, ws.a, ws.b, ws.x, x_new, ws.block);
    std::swap(ws.x, x_new);
    history.push_back(ws.true_residual(r));
    if (history.back() <= cfg.tol) return {true, k};
  }
  return {false, max_iter};
}

Outcome run_gauss_seidel(Workspace& ws, const SolverConfig& cfg, std::size_t max_iter,
                         std::vector<double>& history) {
  const DeviceBuffer& r = ws.work[0];
  for (std::size_t k = 1; k <= max_iter; ++k) {
    for (std::size_t row = 0; row < ws.a.n_rows; ++row) {
      kernels::gauss_seidel_row(ws.exec, ws.a, ws.b, ws.x, row);
    }
    history.push_back(ws.true_residual(r));
    if (history.back() <= cfg.tol) return {true, k};
  }
  return {false, max_iter};
}

Outcome run_cg(Workspace& ws, const SolverConfig& cfg, std::size_t max_iter,
               std::vector<double>& history) {
  Executor& ex = ws.exec;
  const auto bs = ws.block;
  const DeviceBuffer& r = ws.work[0];
  const DeviceBuffer& p = ws.work[1];
  const DeviceBuffer& ap = ws.work[2];
  const DeviceBuffer& rt = ws.work[3];
  const double threshold = breakdown_threshold(cfg.kind);

  kernels::residual(ex, ws.a, ws.b, ws.x, r, bs);
  kernels::copy(ex, r, p, bs);
  double rr = kernels::dot(ex, r, r, bs);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    kernels::csr_spmv(ex, ws.a, p, ap, bs);
    const double pap = kernels::dot(ex, p, ap, bs);
    if (!(pap > threshold)) {
      breakdown(Method::CG, "p'Ap = " + std::to_string(pap) + " (matrix not positive definite)",
                k);
    }
    const double alpha = rr / pap;
    kernels::axpy(ex, alpha, p, ws.x, bs);
    kernels::axpy(ex, -alpha, ap, r, bs);
    history.push_back(ws.true_residual(rt));
    if (history.back() <= cfg.tol) return {true, k};
    const double rr_next = kernels::dot(ex, r, r, bs);
    const double beta = rr_next / rr;
    rr = rr_next;
    kernels::axpby(ex, 1.0, r, beta, p, bs);
  }
  return {false, max_iter};
}

Outcome run_bicgstab(Workspace& ws, const SolverConfig& cfg, std::size_t max_iter,
                     std::vector<double>& history) {
  Executor& ex = ws.exec;
  const auto bs = ws.block;
  const DeviceBuffer& r = ws.work[0];
  const DeviceBuffer& r_hat = ws.work[1];
  const DeviceBuffer& p = ws.work[2];
  const DeviceBuffer& v = ws.work[3];
  const DeviceBuffer& s = ws.work[4];
  const DeviceBuffer& t = ws.work[5];
  const DeviceBuffer& rt = ws.work[6];
  const double threshold = breakdown_threshold(cfg.kind);

  kernels::residual(ex, ws.a, ws.b, ws.x, r, bs);
  kernels::copy(ex, r, r_hat, bs);
  double rho_prev = 1.0, alpha = 1.0, omega = 1.0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const double rho = kernels::dot(ex, r_hat, r, bs);
    if (std::abs(rho) < threshold) breakdown(Method::BiCGSTAB, "rho = r_hat'r vanished", k);
    if (k == 1) {
      kernels::copy(ex, r, p, bs);
    } else {
      const double beta = (rho / rho_prev) * (alpha / omega);
      kernels::axpy(ex, -omega, v, p, bs);
      kernels::axpby(ex, 1.0, r, beta, p, bs);
    }
    kernels::csr_spmv(ex, ws.a, p, v, bs);
    const double rv = kernels::dot(ex, r_hat, v, bs);
    if (std::abs(rv) < threshold) breakdown(Method::BiCGSTAB, "r_hat'Ap vanished", k);
    alpha = rho / rv;
    kernels::copy(ex, r, s, bs);
    kernels::axpy(ex, -alpha, v, s, bs);
    kernels::axpy(ex, alpha, p, ws.x, bs);

    // half-step exit when s is already small enough
    if (kernels::nrm2(ex, s, bs) / ws.b_norm <= cfg.tol) {
      const double res = ws.true_residual(rt);
      if (res <= cfg.tol) {
        history.push_back(res);
        return {true, k};
      }
    }

    kernels::csr_spmv(ex, ws.a, s, t, bs);
    const double tt = kernels::dot(ex, t, t, bs);
    if (tt < threshold) breakdown(Method::BiCGSTAB, "t't vanished", k);
    omega = kernels::dot(ex, t, s, bs) / tt;
    if (std::abs(omega) < threshold) breakdown(Method::BiCGSTAB, "omega vanished", k);
    kernels::axpy(ex, omega, s, ws.x, bs);
    kernels::copy(ex, s, r, bs);
    kernels::axpy(ex, -omega, t, r, bs);
    history.push_back(ws.true_residual(rt));
    if (history.back() <= cfg.tol) return {true, k};
    rho_prev = rho;
  }
  return {false, max_iter};
}

// Restarted GMRES(m): modified Gram-Schmidt Arnoldi on the device, Givens
// least squares on the host.
Outcome run_gmres(Workspace& ws, const SolverConfig& cfg, std::size_t max_iter,
                  std::vector<double>& history) {
  Executor& ex = ws.exec;
  const auto bs = ws.block;
  const std::size_t m = cfg.restart;
  std::span<const DeviceBuffer> basis(ws.work.data(), m + 1);
  const DeviceBuffer& w = ws.work[m + 1];
  const double threshold = breakdown_threshold(cfg.kind);

  // column-major (m+1) x m Hessenberg
  std::vector<double> h((m + 1) * m);
  const auto H = [&h, m](std::size_t i, std::size_t j) -> double& { return h[j * (m + 1) + i]; };
  std::vector<double> cs(m), sn(m), g(m + 1), y(m);

  kernels::residual(ex, ws.a, ws.b, ws.x, basis[0], bs);
  double beta = kernels::nrm2(ex, basis[0], bs);
  std::size_t total = 0;

  while (total < max_iter) {
    std::fill(h.begin(), h.end(), 0.0);
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    kernels::scal(ex, 1.0 / beta, basis[0], bs);

    std::size_t used = 0;
    for (std::size_t j = 0; j < m && total < max_iter; ++j) {
      kernels::csr_spmv(ex, ws.a, basis[j], w, bs);
      for (std::size_t i = 0; i <= j; ++i) {
        H(i, j) = kernels::dot(ex, w, basis[i], bs);
        kernels::axpy(ex, -H(i, j), basis[i], w, bs);
      }
      H(j + 1, j) = kernels::nrm2(ex, w, bs);
      const bool happy = H(j + 1, j) <= threshold;
      if (!happy) kernels::axpby(ex, 1.0 / H(j + 1, j), w, 0.0, basis[j + 1], bs);

      for (std::size_t i = 0; i < j; ++i) {
        const double upper = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = upper;
      }
      const double radius = std::hypot(H(j, j), H(j + 1, j));
      if (!(radius > threshold)) {
        breakdown(Method::GMRES, "singular Hessenberg column", total + 1);
      }
      cs[j] = H(j, j) / radius;
      sn[j] = H(j + 1, j) / radius;
      H(j, j) = radius;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      ++total;
      used = j + 1;
      history.push_back(std::abs(g[j + 1]) / ws.b_norm);
      if (history.back() <= cfg.tol || happy) break;
    }

    for (std::size_t i = used; i-- > 0;) {
      double acc = g[i];
      for (std::size_t l = i + 1; l < used; ++l) acc -= H(i, l) * y[l];
      y[i] = acc / H(i, i);
    }
    for (std::size_t i = 0; i < used; ++i) kernels::axpy(ex, y[i], basis[i], ws.x, bs);

    kernels::residual(ex, ws.a, ws.b, ws.x, basis[0], bs);
    beta = kernels::nrm2(ex, basis[0], bs);
    history.back() = beta / ws.b_norm;
    if (history.back() <= cfg.tol) return {true, total};
  }
  return {false, total};
}

template <typename T>
SolveResult solve_typed(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                        const SolverConfig& cfg) {
  Device& dev = exec.device();
  const std::size_t n = a.n_rows;

  SolveResult result;
  SolverReport& report = result.report;
  report.method = cfg.method;
  report.kind = cfg.kind;
  report.n = n;
  report.max_iter = cfg.max_iter != 0 ? cfg.max_iter : std::max<std::size_t>(1, 10 * n);
  StepTimer timer(report.step_seconds);

  timer.begin(FlowStep::HostAlloc);
  CsrMatrix<T> host_a;
  host_a.n_rows = n;
  host_a.n_cols = n;
  host_a.row_ptr.resize(a.row_ptr.size());
  host_a.col_idx.resize(a.col_idx.size());
  host_a.vals.resize(a.vals.size());
  std::vector<T> host_b(n);
  std::vector<T> host_x(n);

  timer.begin(FlowStep::HostInit);
  std::copy(a.row_ptr.begin(), a.row_ptr.end(), host_a.row_ptr.begin());
  std::copy(a.col_idx.begin(), a.col_idx.end(), host_a.col_idx.begin());
  std::transform(a.vals.begin(), a.vals.end(), host_a.vals.begin(),
                 [](double v) { return static_cast<T>(v); });
  std::transform(b.begin(), b.end(), host_b.begin(), [](double v) { return static_cast<T>(v); });
  std::fill(host_x.begin(), host_x.end(), T(0));

  timer.begin(FlowStep::DeviceAlloc);
  std::vector<ScopedBuffer> owned;
  const auto alloc = [&](std::size_t len, ElemKind kind) {
    owned.emplace_back(dev, len, kind);
    return owned.back().get();
  };
  DeviceCsr dev_a;
  dev_a.n_rows = n;
  dev_a.n_cols = n;
  dev_a.row_ptr = alloc(host_a.row_ptr.size(), ElemKind::Index);
  dev_a.col_idx = alloc(host_a.col_idx.size(), ElemKind::Index);
  dev_a.vals = alloc(host_a.vals.size(), kind_of<T>());
  const DeviceBuffer dev_b = alloc(n, kind_of<T>());
  const DeviceBuffer dev_x = alloc(n, kind_of<T>());
  std::vector<DeviceBuffer> work;
  for (std::size_t i = 0; i < work_vectors(cfg); ++i) work.push_back(alloc(n, kind_of<T>()));

  timer.begin(FlowStep::CopyIn);
  dev.copy_host_to_device(std::span<const index_t>(host_a.row_ptr), dev_a.row_ptr);
  dev.copy_host_to_device(std::span<const index_t>(host_a.col_idx), dev_a.col_idx);
  dev.copy_host_to_device(std::span<const T>(host_a.vals), dev_a.vals);
  dev.copy_host_to_device(std::span<const T>(host_b), dev_b);
  dev.copy_host_to_device(std::span<const T>(host_x), dev_x);

  timer.begin(FlowStep::GridBlocks);
  report.grid_blocks = linear_config(n, cfg.block_size).grid.volume();
  timer.begin(FlowStep::GridThreads);
  report.threads_per_block = cfg.block_size;

  timer.begin(FlowStep::Execute);
  Workspace ws{exec, dev_a, dev_b, dev_x, work, cfg.block_size};
  ws.b_norm = n == 0 ? 0.0 : kernels::nrm2(exec, dev_b, cfg.block_size);
  Outcome outcome;
  if (ws.b_norm == 0.0) {
    // x_0 = 0 solves a homogeneous system exactly
    report.residual_history.push_back(0.0);
    outcome = {true, 0};
  } else {
    report.residual_history.push_back(1.0);
    auto& hist = report.residual_history;
    switch (cfg.method) {
      case Method::Jacobi: outcome = run_jacobi(ws, cfg, report.max_iter, hist); break;
      case Method::GaussSeidel: outcome = run_gauss_seidel(ws, cfg, report.max_iter, hist); break;
      case Method::CG: outcome = run_cg(ws, cfg, report.max_iter, hist); break;
      case Method::GMRES: outcome = run_gmres(ws, cfg, report.max_iter, hist); break;
      case Method::BiCGSTAB: outcome = run_bicgstab(ws, cfg, report.max_iter, hist); break;
    }
  }
  report.converged = outcome.converged;
  report.iterations = outcome.iterations;

  timer.begin(FlowStep::CopyBack);
  dev.copy_device_to_host(ws.x, std::span<T>(host_x));

  timer.begin(FlowStep::Cleanup);
  for (auto& buf : owned) dev.free(buf.release());
  owned.clear();
  result.x.assign(host_x.begin(), host_x.end());
  host_a = {};
  host_b = {};
  host_x = {};
  timer.finish();
  return result;
}

SolveResult with_method(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                        SolverConfig cfg, Method method) {
  cfg.method = method;
  return solve(exec, a, b, cfg);
}

}  // namespace

SolveResult solve(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                  const SolverConfig& cfg) {
  check_system(a, b, cfg);
  return dispatch_precision(cfg.kind, [&](auto tag) {
    return solve_typed<decltype(tag)>(exec, a, b, cfg);
  });
}

SolveResult jacobi_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                           SolverConfig cfg) {
  return with_method(exec, a, b, cfg, Method::Jacobi);
}

SolveResult gauss_seidel_iterate(Executor& exec, const CsrMatrix<double>& a,
                                 std::span<const double> b, SolverConfig cfg) {
  return with_method(exec, a, b, cfg, Method::GaussSeidel);
}

SolveResult cg_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                       SolverConfig cfg) {
  return with_method(exec, a, b, cfg, Method::CG);
}

SolveResult gmres_iterate(Executor& exec, const CsrMatrix<double>& a, std::span<const double> b,
                          SolverConfig cfg) {
  return with_method(exec, a, b, cfg, Method::GMRES);
}

SolveResult bicgstab_iterate(Executor& exec, const CsrMatrix<double>& a,
                             std::span<const double> b, SolverConfig cfg) {
  return with_method(exec, a, b, cfg, Method::BiCGSTAB);
}

}  // namespace simt
