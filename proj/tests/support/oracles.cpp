// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

std::vector<double> lu_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i * n + j] * x[j];
    x[i] = acc / a[i * n + i];
  }
  return x;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (const double e : v) m = std::max(m, std::abs(e));
  return m;
}

double inf_norm_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double relative_residual(const Dense& a, const std::vector<double>& b,
                         const std::vector<double>& x) {
  const std::size_t n = b.size();
  long double rr = 0.0L, bb = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double ax = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      ax += static_cast<long double>(a[i * n + j]) * static_cast<long double>(x[j]);
    }
    const long double r = static_cast<long double>(b[i]) - ax;
    rr += r * r;
    bb += static_cast<long double>(b[i]) * static_cast<long double>(b[i]);
  }
  return static_cast<double>(std::sqrt(rr) / std::sqrt(bb));
}

double recomputed_residual(const Dense& a, const std::vector<double>& b,
                           const std::vector<double>& x) {
  const std::size_t n = b.size();
  double rr = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += a[i * n + j] * x[j];
    const double r = b[i] - ax;
    rr += r * r;
    bb += b[i] * b[i];
  }
  return std::sqrt(rr) / std::sqrt(bb);
}

simt::CsrMatrix<double> random_sparse(std::size_t rows, std::size_t cols, double density,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  simt::CsrMatrix<double> a;
  a.n_rows = rows;
  a.n_cols = cols;
  a.row_ptr.assign(1, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (coin(rng) < density) {
        a.col_idx.push_back(static_cast<simt::index_t>(j));
        a.vals.push_back(value(rng));
      }
    }
    a.row_ptr.push_back(static_cast<simt::index_t>(a.vals.size()));
  }
  return a;
}

simt::CsrMatrix<double> diagonally_dominant(std::size_t n, double density, std::mt19937_64& rng) {
  const simt::CsrMatrix<double> base = random_sparse(n, n, density, rng);
  simt::CsrMatrix<double> a;
  a.n_rows = n;
  a.n_cols = n;
  a.row_ptr.assign(1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (auto k = base.row_ptr[i]; k < base.row_ptr[i + 1]; ++k) {
      if (static_cast<std::size_t>(base.col_idx[k]) != i) off += std::abs(base.vals[k]);
    }
    bool placed = false;
    for (auto k = base.row_ptr[i]; k < base.row_ptr[i + 1]; ++k) {
      const auto j = static_cast<std::size_t>(base.col_idx[k]);
      if (!placed && j >= i) {
        a.col_idx.push_back(static_cast<simt::index_t>(i));
        a.vals.push_back(off + 1.0);
        placed = true;
        if (j == i) continue;
      }
      if (j == i) continue;
      a.col_idx.push_back(base.col_idx[k]);
      a.vals.push_back(base.vals[k]);
    }
    if (!placed) {
      a.col_idx.push_back(static_cast<simt::index_t>(i));
      a.vals.push_back(off + 1.0);
    }
    a.row_ptr.push_back(static_cast<simt::index_t>(a.vals.size()));
  }
  return a;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& e : v) e = dist(rng);
  return v;
}

}  // namespace oracle
