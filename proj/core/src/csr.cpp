// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/csr.hpp"

#include <algorithm>
#include <string>

#include "simt/error.hpp"

namespace simt {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, "invalid CSR matrix: " + what);
}

}  // namespace

template <typename T>
void validate(const CsrMatrix<T>& a) {
  if (a.row_ptr.size() != a.n_rows + 1) malformed("row_ptr length != n_rows + 1");
  if (a.row_ptr.front() != 0) malformed("row_ptr[0] != 0");
  if (a.col_idx.size() != a.vals.size()) malformed("col_idx and vals lengths differ");
  if (static_cast<std::size_t>(a.row_ptr.back()) != a.vals.size()) {
    malformed("row_ptr[n_rows] != nnz");
  }
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    const index_t begin = a.row_ptr[i];
    const index_t end = a.row_ptr[i + 1];
    if (end < begin) malformed("row_ptr decreases at row " + std::to_string(i));
    for (index_t k = begin; k < end; ++k) {
      const index_t c = a.col_idx[k];
      if (c < 0 || static_cast<std::size_t>(c) >= a.n_cols) {
        malformed("column index out of range in row " + std::to_string(i));
      }
      if (k > begin && a.col_idx[k - 1] >= c) {
        malformed("columns not strictly increasing in row " + std::to_string(i));
      }
    }
  }
}

template <typename T>
CsrMatrix<T> csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                               std::vector<Triplet<T>> entries) {
  for (const auto& e : entries) {
    if (e.row >= n_rows || e.col >= n_cols) {
      throw Error(ErrorCode::IndexOutOfBounds,
                  "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                      ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
    return l.row != r.row ? l.row < r.row : l.col < r.col;
  });
  CsrMatrix<T> a;
  a.n_rows = n_rows;
  a.n_cols = n_cols;
  a.row_ptr.assign(n_rows + 1, 0);
  a.col_idx.reserve(entries.size());
  a.vals.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw Error(ErrorCode::DuplicateEntry, "duplicate entry (" + std::to_string(e.row) + "," +
                                                 std::to_string(e.col) + ")");
    }
    a.col_idx.push_back(static_cast<index_t>(e.col));
    a.vals.push_back(e.value);
    ++a.row_ptr[e.row + 1];
  }
  for (std::size_t i = 0; i < n_rows; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
  return a;
}

template <typename T>
CsrMatrix<T> csr_from_dense(std::size_t n_rows, std::size_t n_cols, std::span<const T> dense) {
  if (dense.size() != n_rows * n_cols) {
    throw Error(ErrorCode::DimensionMismatch, "dense data length != rows * cols");
  }
  CsrMatrix<T> a;
  a.n_rows = n_rows;
  a.n_cols = n_cols;
  a.row_ptr.assign(1, 0);
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) {
      const T v = dense[i * n_cols + j];
      if (v != T(0)) {
        a.col_idx.push_back(static_cast<index_t>(j));
        a.vals.push_back(v);
      }
    }
    a.row_ptr.push_back(static_cast<index_t>(a.vals.size()));
  }
  return a;
}

template <typename T>
std::vector<T> csr_to_dense(const CsrMatrix<T>& a) {
  std::vector<T> dense(a.n_rows * a.n_cols, T(0));
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      dense[i * a.n_cols + static_cast<std::size_t>(a.col_idx[k])] = a.vals[k];
    }
  }
  return dense;
}

template <typename T>
CsrMatrix<T> transpose(const CsrMatrix<T>& a) {
  CsrMatrix<T> t;
  t.n_rows = a.n_cols;
  t.n_cols = a.n_rows;
  t.row_ptr.assign(a.n_cols + 1, 0);
  for (index_t c : a.col_idx) ++t.row_ptr[static_cast<std::size_t>(c) + 1];
  for (std::size_t i = 0; i < a.n_cols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.col_idx.resize(a.nnz());
  t.vals.resize(a.nnz());
  std::vector<index_t> fill(t.row_ptr.begin(), t.row_ptr.end() - 1);
  // rows of `a` are visited in order, so each transposed row stays sorted
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const index_t dst = fill[static_cast<std::size_t>(a.col_idx[k])]++;
      t.col_idx[dst] = static_cast<index_t>(i);
      t.vals[dst] = a.vals[k];
    }
  }
  return t;
}

template <typename T>
bool is_symmetric(const CsrMatrix<T>& a) {
  if (!a.square()) return false;
  const CsrMatrix<T> t = transpose(a);
  return t.row_ptr == a.row_ptr && t.col_idx == a.col_idx && t.vals == a.vals;
}

template <typename T>
index_t find_diagonal(const CsrMatrix<T>& a, std::size_t row) {
  const auto first = a.col_idx.begin() + a.row_ptr[row];
  const auto last = a.col_idx.begin() + a.row_ptr[row + 1];
  const auto it = std::lower_bound(first, last, static_cast<index_t>(row));
  if (it == last || *it != static_cast<index_t>(row)) return -1;
  return static_cast<index_t>(it - a.col_idx.begin());
}

template <typename T>
DeviceCsr upload(Device& device, const CsrMatrix<T>& a) {
  DeviceCsr d;
  d.n_rows = a.n_rows;
  d.n_cols = a.n_cols;
  ScopedBuffer row_ptr(device, device.alloc_copy(std::span<const index_t>(a.row_ptr)));
  ScopedBuffer col_idx(device, device.alloc_copy(std::span<const index_t>(a.col_idx)));
  ScopedBuffer vals(device, device.alloc_copy(std::span<const T>(a.vals)));
  d.row_ptr = row_ptr.release();
  d.col_idx = col_idx.release();
  d.vals = vals.release();
  return d;
}

void release(Device& device, const DeviceCsr& a) {
  device.free(a.row_ptr);
  device.free(a.col_idx);
  device.free(a.vals);
}

template <typename T>
DeviceMatrix upload(Device& device, const DenseMatrix<T>& a) {
  return DeviceMatrix{a.rows, a.cols, device.alloc_copy(std::span<const T>(a.data))};
}

#define SIMT_INSTANTIATE(T)                                                                    \
  template void validate(const CsrMatrix<T>&);                                                 \
  template CsrMatrix<T> csr_from_triplets(std::size_t, std::size_t, std::vector<Triplet<T>>); \
  template CsrMatrix<T> csr_from_dense(std::size_t, std::size_t, std::span<const T>);          \
  template std::vector<T> csr_to_dense(const CsrMatrix<T>&);                                  \
  template CsrMatrix<T> transpose(const CsrMatrix<T>&);                                       \
  template bool is_symmetric(const CsrMatrix<T>&);                                            \
  template index_t find_diagonal(const CsrMatrix<T>&, std::size_t);                           \
  template DeviceCsr upload(Device&, const CsrMatrix<T>&);                                    \
  template DeviceMatrix upload(Device&, const DenseMatrix<T>&);

SIMT_INSTANTIATE(float)
SIMT_INSTANTIATE(double)

#undef SIMT_INSTANTIATE

}  // namespace simt
