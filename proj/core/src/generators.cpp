// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/generators.hpp"

#include <random>

namespace simt {

namespace {

// Row-by-row assembly of a 5-point stencil; entries are appended in
// ascending column order (south, west, centre, east, north).
CsrMatrix<double> five_point(std::size_t k, double centre, double west, double east,
                             double south, double north) {
  const std::size_t n = k * k;
  CsrMatrix<double> a;
  a.n_rows = n;
  a.n_cols = n;
  a.row_ptr.assign(1, 0);
  a.col_idx.reserve(5 * n);
  a.vals.reserve(5 * n);
  const auto push = [&a](std::size_t col, double v) {
    a.col_idx.push_back(static_cast<index_t>(col));
    a.vals.push_back(v);
  };
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t i = r * k + c;
      if (r > 0) push(i - k, south);
      if (c > 0) push(i - 1, west);
      push(i, centre);
      if (c + 1 < k) push(i + 1, east);
      if (r + 1 < k) push(i + k, north);
      a.row_ptr.push_back(static_cast<index_t>(a.vals.size()));
    }
  }
  return a;
}

}  // namespace

CsrMatrix<double> gen_poisson(std::size_t k) { return five_point(k, 4.0, -1.0, -1.0, -1.0, -1.0); }

CsrMatrix<double> gen_convection_diffusion(std::size_t k, double wind_x, double wind_y) {
  return five_point(k, 4.0, -1.0 - wind_x, -1.0 + wind_x, -1.0 - wind_y, -1.0 + wind_y);
}

CsrMatrix<double> gen_tridiagonal(std::size_t n) {
  CsrMatrix<double> a;
  a.n_rows = n;
  a.n_cols = n;
  a.row_ptr.assign(1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      a.col_idx.push_back(static_cast<index_t>(i - 1));
      a.vals.push_back(-1.0);
    }
    a.col_idx.push_back(static_cast<index_t>(i));
    a.vals.push_back(2.0);
    if (i + 1 < n) {
      a.col_idx.push_back(static_cast<index_t>(i + 1));
      a.vals.push_back(-1.0);
    }
    a.row_ptr.push_back(static_cast<index_t>(a.vals.size()));
  }
  return a;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = dist(rng);
  return v;
}

}  // namespace simt
