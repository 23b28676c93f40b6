// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/reference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "simt/error.hpp"

namespace simt::reference {

template <typename T>
void axpy(T alpha, std::span<const T> x, std::span<T> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * x[i] + y[i];
}

template <typename T>
T dot(std::span<const T> x, std::span<const T> y) {
  T sum = T(0);
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

template <typename T>
void csr_spmv(const CsrMatrix<T>& a, std::span<const T> x, std::span<T> y) {
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    T sum = T(0);
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      sum += a.vals[k] * x[static_cast<std::size_t>(a.col_idx[k])];
    }
    y[i] = sum;
  }
}

template <typename T>
void gemm(T alpha, const DenseMatrix<T>& a, const DenseMatrix<T>& b, T beta,
          DenseMatrix<T>& c) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols) {
    throw Error(ErrorCode::DimensionMismatch, "reference gemm: dimension mismatch");
  }
  for (auto& v : c.data) v = beta == T(0) ? T(0) : beta * v;
  if (alpha == T(0)) return;
  for (std::size_t i = 0; i < a.rows; ++i) {
    T* crow = &c.data[i * c.cols];
    for (std::size_t k = 0; k < a.cols; ++k) {
      const T aik = alpha * a(i, k);
      const T* brow = &b.data[k * b.cols];
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
}

namespace {

using Vec = std::vector<double>;

struct System {
  const CsrMatrix<double>& a;
  std::span<const double> b;
  double b_norm;

  double relative_residual(const Vec& x, Vec& scratch) const {
    csr_spmv<double>(a, x, scratch);
    double sum = 0.0;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      const double r = b[i] - scratch[i];
      sum += r * r;
    }
    return std::sqrt(sum) / b_norm;
  }
};

double diag(const CsrMatrix<double>& a, std::size_t i) {
  return a.vals[static_cast<std::size_t>(find_diagonal(a, i))];
}

double off_diag_sum(const CsrMatrix<double>& a, std::size_t i, const Vec& x) {
  double sum = 0.0;
  for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
    const auto j = static_cast<std::size_t>(a.col_idx[k]);
    if (j != i) sum += a.vals[k] * x[j];
  }
  return sum;
}

[[noreturn]] void breakdown(const char* what) {
  throw Error(ErrorCode::Breakdown, std::string("reference solver breakdown: ") + what);
}

}  // namespace

SolveResult solve(const CsrMatrix<double>& a, std::span<const double> b,
                  const SolverConfig& cfg) {
  check_system(a, b, cfg);
  const std::size_t n = a.n_rows;
  SolveResult result;
  SolverReport& rep = result.report;
  rep.method = cfg.method;
  rep.kind = ElemKind::F64;
  rep.n = n;
  rep.max_iter = cfg.max_iter != 0 ? cfg.max_iter : std::max<std::size_t>(1, 10 * n);
  const auto start = std::chrono::steady_clock::now();

  Vec x(n, 0.0), scratch(n);
  auto& hist = rep.residual_history;
  const System sys{a, b, std::sqrt(dot<double>(b, b))};
  const double tol = cfg.tol;
  const double threshold = breakdown_threshold(ElemKind::F64);
  std::size_t it = 0;
  bool converged = false;

  const auto record = [&](std::size_t k) {
    hist.push_back(sys.relative_residual(x, scratch));
    it = k;
    converged = hist.back() <= tol;
    return converged;
  };

  if (sys.b_norm == 0.0) {
    hist.push_back(0.0);
    converged = true;
  } else {
    hist.push_back(1.0);
    switch (cfg.method) {
      case Method::Jacobi: {
        Vec next(n);
        for (std::size_t k = 1; k <= rep.max_iter; ++k) {
          for (std::size_t i = 0; i < n; ++i) next[i] = (b[i] - off_diag_sum(a, i, x)) / diag(a, i);
          std::swap(x, next);
          if (record(k)) break;
        }
        break;
      }
      case Method::GaussSeidel: {
        for (std::size_t k = 1; k <= rep.max_iter; ++k) {
          for (std::size_t i = 0; i < n; ++i) x[i] = (b[i] - off_diag_sum(a, i, x)) / diag(a, i);
          if (record(k)) break;
        }
        break;
      }
      case Method::CG: {
        Vec r(b.begin(), b.end()), p = r, ap(n);
        double rr = dot<double>(r, r);
        for (std::size_t k = 1; k <= rep.max_iter; ++k) {
          csr_spmv<double>(a, p, ap);
          const double pap = dot<double>(p, ap);
          if (!(pap > threshold)) breakdown("p'Ap not positive");
          const double alpha = rr / pap;
          axpy<double>(alpha, p, x);
          axpy<double>(-alpha, ap, r);
          if (record(k)) break;
          const double rr_next = dot<double>(r, r);
          const double beta = rr_next / rr;
          rr = rr_next;
          for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        }
        break;
      }
      case Method::BiCGSTAB: {
        Vec r(b.begin(), b.end()), r_hat = r, p(n), v(n), s(n), t(n);
        double rho_prev = 1.0, alpha = 1.0, omega = 1.0;
        for (std::size_t k = 1; k <= rep.max_iter; ++k) {
          const double rho = dot<double>(r_hat, r);
          if (std::abs(rho) < threshold) breakdown("rho vanished");
          if (k == 1) {
            p = r;
          } else {
            const double beta = (rho / rho_prev) * (alpha / omega);
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
          }
          csr_spmv<double>(a, p, v);
          const double rv = dot<double>(r_hat, v);
          if (std::abs(rv) < threshold) breakdown("r_hat'Ap vanished");
          alpha = rho / rv;
          for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
          axpy<double>(alpha, p, x);
          if (std::sqrt(dot<double>(s, s)) / sys.b_norm <= tol) {
            const double res = sys.relative_residual(x, scratch);
            if (res <= tol) {
              hist.push_back(res);
              it = k;
              converged = true;
              break;
            }
          }
          csr_spmv<double>(a, s, t);
          const double tt = dot<double>(t, t);
          if (tt < threshold) breakdown("t't vanished");
          omega = dot<double>(t, s) / tt;
          if (std::abs(omega) < threshold) breakdown("omega vanished");
          axpy<double>(omega, s, x);
          for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
          if (record(k)) break;
          rho_prev = rho;
        }
        if (!converged) it = rep.max_iter;
        break;
      }
      case Method::GMRES: {
        const std::size_t m = cfg.restart;
        std::vector<Vec> basis(m + 1, Vec(n));
        Vec w(n), cs(m), sn(m), g(m + 1), y(m);
        std::vector<double> h((m + 1) * m);
        const auto H = [&h, m](std::size_t i, std::size_t j) -> double& {
          return h[j * (m + 1) + i];
        };
        std::size_t total = 0;
        const auto residual_into = [&](Vec& r) {
          csr_spmv<double>(a, x, scratch);
          for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - scratch[i];
          return std::sqrt(dot<double>(r, r));
        };
        double beta = residual_into(basis[0]);
        while (total < rep.max_iter && !converged) {
          std::fill(h.begin(), h.end(), 0.0);
          std::fill(g.begin(), g.end(), 0.0);
          g[0] = beta;
          for (auto& e : basis[0]) e *= 1.0 / beta;
          std::size_t used = 0;
          for (std::size_t j = 0; j < m && total < rep.max_iter; ++j) {
            csr_spmv<double>(a, basis[j], w);
            for (std::size_t i = 0; i <= j; ++i) {
              H(i, j) = dot<double>(w, basis[i]);
              axpy<double>(-H(i, j), basis[i], w);
            }
            H(j + 1, j) = std::sqrt(dot<double>(w, w));
            const bool happy = H(j + 1, j) <= threshold;
            if (!happy) {
              for (std::size_t i = 0; i < n; ++i) basis[j + 1][i] = w[i] / H(j + 1, j);
            }
            for (std::size_t i = 0; i < j; ++i) {
              const double upper = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
              H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
              H(i, j) = upper;
            }
            const double radius = std::hypot(H(j, j), H(j + 1, j));
            if (!(radius > threshold)) breakdown("singular Hessenberg column");
            cs[j] = H(j, j) / radius;
            sn[j] = H(j + 1, j) / radius;
            H(j, j) = radius;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            ++total;
            used = j + 1;
            hist.push_back(std::abs(g[j + 1]) / sys.b_norm);
            if (hist.back() <= tol || happy) break;
          }
          for (std::size_t i = used; i-- > 0;) {
            double acc = g[i];
            for (std::size_t l = i + 1; l < used; ++l) acc -= H(i, l) * y[l];
            y[i] = acc / H(i, i);
          }
          for (std::size_t i = 0; i < used; ++i) axpy<double>(y[i], basis[i], x);
          beta = residual_into(basis[0]);
          hist.back() = beta / sys.b_norm;
          converged = hist.back() <= tol;
        }
        it = total;
        break;
      }
    }
  }
  rep.converged = converged;
  rep.iterations = it;
  rep.step_seconds[static_cast<std::size_t>(FlowStep::Execute)] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.x = std::move(x);
  return result;
}

template void axpy(float, std::span<const float>, std::span<float>);
template void axpy(double, std::span<const double>, std::span<double>);
template float dot(std::span<const float>, std::span<const float>);
template double dot(std::span<const double>, std::span<const double>);
template void csr_spmv(const CsrMatrix<float>&, std::span<const float>, std::span<float>);
template void csr_spmv(const CsrMatrix<double>&, std::span<const double>, std::span<double>);
template void gemm(float, const DenseMatrix<float>&, const DenseMatrix<float>&, float,
                   DenseMatrix<float>&);
template void gemm(double, const DenseMatrix<double>&, const DenseMatrix<double>&, double,
                   DenseMatrix<double>&);

}  // namespace simt::reference
