// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simt/device.hpp"
#include "simt/elem_kind.hpp"

namespace simt {

/// Compressed sparse row matrix held in host memory.
///
/// Invariants (checked by `validate`): row_ptr has n_rows + 1 non-decreasing
/// entries starting at 0 and ending at nnz; column indices lie in [0, n_cols)
/// and are strictly increasing within each row; vals has nnz entries.
template <typename T>
struct CsrMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<index_t> row_ptr{0};
  std::vector<index_t> col_idx;
  std::vector<T> vals;

  std::size_t nnz() const noexcept { return vals.size(); }
  bool square() const noexcept { return n_rows == n_cols; }

  template <typename U>
  CsrMatrix<U> cast() const {
    CsrMatrix<U> out;
    out.n_rows = n_rows;
    out.n_cols = n_cols;
    out.row_ptr = row_ptr;
    out.col_idx = col_idx;
    out.vals.assign(vals.begin(), vals.end());
    return out;
  }
};

template <typename T>
struct Triplet {
  std::size_t row;
  std::size_t col;
  T value;
};

/// Throws MalformedInput describing the first violated invariant.
template <typename T>
void validate(const CsrMatrix<T>& a);

/// Builds a CSR matrix from unordered triplets. Rejects out-of-range
/// coordinates (IndexOutOfBounds) and repeated coordinates (DuplicateEntry).
template <typename T>
CsrMatrix<T> csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                               std::vector<Triplet<T>> entries);

/// Keeps every nonzero of a row-major dense matrix.
template <typename T>
CsrMatrix<T> csr_from_dense(std::size_t n_rows, std::size_t n_cols, std::span<const T> dense);

template <typename T>
std::vector<T> csr_to_dense(const CsrMatrix<T>& a);

template <typename T>
CsrMatrix<T> transpose(const CsrMatrix<T>& a);

/// Exact symmetry: same pattern and bit-equal values under transposition.
template <typename T>
bool is_symmetric(const CsrMatrix<T>& a);

/// Position of the diagonal entry of `row` in col_idx/vals, or -1.
template <typename T>
index_t find_diagonal(const CsrMatrix<T>& a, std::size_t row);

/// A CSR matrix resident in device memory.
struct DeviceCsr {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  DeviceBuffer row_ptr;
  DeviceBuffer col_idx;
  DeviceBuffer vals;

  ElemKind kind() const noexcept { return vals.kind; }
};

template <typename T>
DeviceCsr upload(Device& device, const CsrMatrix<T>& a);

void release(Device& device, const DeviceCsr& a);

/// Row-major dense matrix held in host memory.
template <typename T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  DenseMatrix(std::size_t r, std::size_t c, std::vector<T> d)
      : rows(r), cols(c), data(std::move(d)) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// A row-major dense matrix resident in device memory.
struct DeviceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  DeviceBuffer buf;

  ElemKind kind() const noexcept { return buf.kind; }
};

template <typename T>
DeviceMatrix upload(Device& device, const DenseMatrix<T>& a);

}  // namespace simt
