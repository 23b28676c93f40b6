// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "simt/csr.hpp"
#include "simt/generators.hpp"
#include "simt/matrix_market.hpp"
#include "support/oracles.hpp"

namespace {

using simt::CsrMatrix;
using simt::ErrorCode;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const simt::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected simt::Error";
  return ErrorCode::InvalidArgument;
}

CsrMatrix<double> parse(const std::string& text) {
  std::istringstream in(text);
  return simt::read_matrix_market(in);
}

TEST(Csr, FromTripletsSortsColumns) {
  const std::vector<simt::Triplet<double>> t{{1, 2, 5.0}, {0, 1, 2.0}, {1, 0, 3.0}, {0, 0, 1.0}};
  const auto a = simt::csr_from_triplets<double>(2, 3, t);
  EXPECT_EQ(a.row_ptr, (std::vector<simt::index_t>{0, 2, 4}));
  EXPECT_EQ(a.col_idx, (std::vector<simt::index_t>{0, 1, 0, 2}));
  EXPECT_EQ(a.vals, (std::vector<double>{1, 2, 3, 5}));
  simt::validate(a);
}

TEST(Csr, TripletErrors) {
  EXPECT_EQ(code_of([] { simt::csr_from_triplets<double>(2, 2, {{{2, 0, 1.0}}}); }),
            ErrorCode::IndexOutOfBounds);
  EXPECT_EQ(code_of([] { simt::csr_from_triplets<double>(2, 2, {{{0, 0, 1.0}, {0, 0, 2.0}}}); }),
            ErrorCode::DuplicateEntry);
}

TEST(Csr, ValidateRejectsBrokenStructure) {
  CsrMatrix<double> a;
  a.n_rows = 2;
  a.n_cols = 2;
  a.row_ptr = {0, 2, 1};
  a.col_idx = {0, 1};
  a.vals = {1, 1};
  EXPECT_EQ(code_of([&] { simt::validate(a); }), ErrorCode::MalformedInput);
  a.row_ptr = {0, 1, 2};
  a.col_idx = {0, 2};
  EXPECT_EQ(code_of([&] { simt::validate(a); }), ErrorCode::MalformedInput);
  a.col_idx = {0, 1};
  a.vals = {1};
  EXPECT_EQ(code_of([&] { simt::validate(a); }), ErrorCode::MalformedInput);
}

TEST(Csr, DenseRoundTripAndTranspose) {
  std::mt19937_64 rng(1);
  const auto a = oracle::random_sparse(13, 9, 0.3, rng);
  const auto d = simt::csr_to_dense(a);
  EXPECT_EQ(d, oracle::to_dense(a));
  const auto back = simt::csr_from_dense<double>(13, 9, d);
  EXPECT_EQ(back.vals, a.vals);
  EXPECT_EQ(back.col_idx, a.col_idx);
  const auto t = simt::transpose(a);
  const auto td = oracle::to_dense(t);
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(td[j * 13 + i], d[i * 9 + j]);
  EXPECT_FALSE(simt::is_symmetric(a));
}

TEST(Csr, FindDiagonal) {
  const std::vector<double> d{1, 0, 2, 0};
  const auto a = simt::csr_from_dense<double>(2, 2, d);
  EXPECT_EQ(simt::find_diagonal(a, 0), 0);
  EXPECT_LT(simt::find_diagonal(a, 1), 0);
}

TEST(Generators, PoissonSmall) {
  const auto p1 = simt::gen_poisson(1);
  EXPECT_EQ(p1.n_rows, 1u);
  EXPECT_EQ(p1.vals, (std::vector<double>{4.0}));
  const auto p2 = simt::gen_poisson(2);
  EXPECT_EQ(p2.n_rows, 4u);
  EXPECT_EQ(p2.nnz(), 12u);
  const auto d = oracle::to_dense(p2);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d[i * 4 + i], 4.0);
}

// Stencil count: k^2 diagonals plus two entries per interior grid edge.
TEST(Generators, PoissonInvariants) {
  for (std::size_t k = 1; k <= 12; ++k) {
    const auto a = simt::gen_poisson(k);
    simt::validate(a);
    EXPECT_TRUE(simt::is_symmetric(a));
    EXPECT_EQ(a.nnz(), k * k + 4 * k * (k - 1));
    const auto d = oracle::to_dense(a);
    const std::size_t n = k * k;
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          EXPECT_TRUE(d[i * n + j] == 0.0 || d[i * n + j] == -1.0);
          off += std::abs(d[i * n + j]);
        }
      }
      EXPECT_EQ(d[i * n + i], 4.0);
      EXPECT_LE(off, 4.0);
    }
  }
}

TEST(Generators, ConvectionDiffusionIsNonsymmetric) {
  const auto a = simt::gen_convection_diffusion(10);
  simt::validate(a);
  EXPECT_EQ(a.n_rows, 100u);
  EXPECT_FALSE(simt::is_symmetric(a));
}

TEST(Generators, Tridiagonal) {
  const auto a = simt::gen_tridiagonal(4);
  EXPECT_EQ(oracle::to_dense(a),
            (std::vector<double>{2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2}));
}

TEST(Generators, RandomVectorIsSeeded) {
  EXPECT_EQ(simt::random_vector(50, 42), simt::random_vector(50, 42));
  EXPECT_NE(simt::random_vector(50, 42), simt::random_vector(50, 43));
  for (double v : simt::random_vector(1000, 1)) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(MatrixMarket, Identity) {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "2 2 2\n"
      "1 1 1.0\n"
      "2 2 1.0\n");
  EXPECT_EQ(oracle::to_dense(a), (std::vector<double>{1, 0, 0, 1}));
}

TEST(MatrixMarket, OutOfBounds) {
  EXPECT_EQ(code_of([] {
              parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
            }),
            ErrorCode::IndexOutOfBounds);
}

TEST(MatrixMarket, SymmetricExpansion) {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "2 2 3\n"
      "1 1 2.0\n"
      "2 1 5.0\n"
      "2 2 3.0\n");
  EXPECT_EQ(oracle::to_dense(a), (std::vector<double>{2, 5, 5, 3}));
  EXPECT_TRUE(simt::is_symmetric(a));
}

TEST(MatrixMarket, IntegerField) {
  const auto a = parse("%%MatrixMarket matrix coordinate integer general\n1 2 1\n1 2 7\n");
  EXPECT_EQ(oracle::to_dense(a), (std::vector<double>{0, 7}));
}

TEST(MatrixMarket, MalformedInputs) {
  const char* bad[] = {
      "",
      "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n",
      "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1.0\n",
      "not a banner\n1 1 1\n1 1 1\n",
  };
  for (const char* text : bad) {
    EXPECT_EQ(code_of([&] { parse(text); }), ErrorCode::MalformedInput) << text;
  }
  EXPECT_EQ(code_of([] {
              parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n");
            }),
            ErrorCode::DuplicateEntry);
}

TEST(MatrixMarket, WriteReadRoundTrip) {
  std::mt19937_64 rng(2);
  const auto a = oracle::random_sparse(17, 11, 0.2, rng);
  std::stringstream buf;
  simt::write_matrix_market(buf, a);
  const auto b = simt::read_matrix_market(buf);
  EXPECT_EQ(b.n_rows, a.n_rows);
  EXPECT_EQ(b.n_cols, a.n_cols);
  EXPECT_EQ(b.row_ptr, a.row_ptr);
  EXPECT_EQ(b.col_idx, a.col_idx);
  EXPECT_EQ(b.vals, a.vals);
}

TEST(MatrixMarket, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "simt_mm_test.mtx";
  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 -2.5\n";
  }
  EXPECT_EQ(simt::load_matrix_market(path).vals, (std::vector<double>{-2.5}));
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { simt::load_matrix_market(path); }), ErrorCode::MalformedInput);
}

}  // namespace
