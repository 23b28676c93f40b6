// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "simt/csr.hpp"
#include "simt/device.hpp"
#include "simt/executor.hpp"
#include "simt/generators.hpp"
#include "simt/reference.hpp"
#include "simt/solvers.hpp"
#include "support/oracles.hpp"

namespace {

using simt::CsrMatrix;
using simt::ElemKind;
using simt::ErrorCode;
using simt::Method;
using simt::SolverConfig;

constexpr Method kAllMethods[] = {Method::Jacobi, Method::GaussSeidel, Method::CG, Method::GMRES,
                                  Method::BiCGSTAB};

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

CsrMatrix<double> dense(std::size_t n, std::vector<double> d) {
  return simt::csr_from_dense<double>(n, n, d);
}

SolverConfig cfg(Method m, double tol = 1e-10, std::size_t max_iter = 0) {
  SolverConfig c;
  c.method = m;
  c.tol = tol;
  c.max_iter = max_iter;
  return c;
}

class Solvers : public ::testing::Test {
 protected:
  simt::Device dev;
  simt::Executor ex{dev, simt::ExecutorOptions{2}};

  simt::SolveResult run(const CsrMatrix<double>& a, const std::vector<double>& b,
                        const SolverConfig& c) {
    auto r = simt::solve(ex, a, b, c);
    EXPECT_EQ(dev.live_count(), 0u) << "solver leaked device buffers";
    return r;
  }

  // The reported final residual must match an independent recomputation.
  void expect_honest(const CsrMatrix<double>& a, const std::vector<double>& b,
                     const simt::SolveResult& r) {
    const double truth = oracle::recomputed_residual(oracle::to_dense(a), b, r.x);
    EXPECT_LE(std::abs(r.report.final_residual() - truth), 1e-12 * truth);
  }
};

TEST_F(Solvers, IdentityConvergesImmediately) {
  const auto a = dense(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const std::vector<double> b{1, -2, 3};
  for (Method m : kAllMethods) {
    const auto r = run(a, b, cfg(m));
    EXPECT_TRUE(r.report.converged) << to_string(m);
    EXPECT_LE(r.report.iterations, 1u) << to_string(m);
    EXPECT_EQ(r.x, b) << to_string(m);
  }
}

TEST_F(Solvers, CgTwoByTwo) {
  const auto a = dense(2, {4, 1, 1, 3});
  const std::vector<double> b{1, 2};
  const auto r = run(a, b, cfg(Method::CG));
  const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.iterations, 2u);
  EXPECT_NEAR(r.x[0], 1.0 / 11.0, 1e-12);
  EXPECT_NEAR(r.x[1], 7.0 / 11.0, 1e-12);
  EXPECT_LE(oracle::inf_norm_diff(r.x, x_star), 1e-12);
  expect_honest(a, b, r);
}

TEST_F(Solvers, JacobiSingularNamesRow) {
  const auto a = dense(2, {1, 0, 0, 0});
  try {
    run(a, {1, 1}, cfg(Method::Jacobi));
    FAIL();
  } catch (const simt::ZeroDiagonalError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
  try {
    run(a, {1, 1}, cfg(Method::GaussSeidel));
    FAIL();
  } catch (const simt::ZeroDiagonalError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST_F(Solvers, CgIndefiniteBreaksDown) {
  const auto a = dense(2, {1, 0, 0, -1});
  EXPECT_EQ(code_of([&] { run(a, {1, 2}, cfg(Method::CG)); }), ErrorCode::Breakdown);
  EXPECT_EQ(dev.live_count(), 0u);
}

TEST_F(Solvers, CgRejectsNonsymmetric) {
  const auto a = dense(2, {4, 1, 0, 3});
  EXPECT_EQ(code_of([&] { run(a, {1, 2}, cfg(Method::CG)); }), ErrorCode::NotSymmetric);
}

TEST_F(Solvers, CgPoisson16) {
  const auto a = simt::gen_poisson(16);
  const auto b = simt::random_vector(256, 42);
  const auto r = run(a, b, cfg(Method::CG, 1e-8));
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.iterations, 256u);
  const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
  EXPECT_LE(oracle::inf_norm_diff(r.x, x_star) / oracle::inf_norm(x_star), 1e-7);
  expect_honest(a, b, r);
}

TEST_F(Solvers, CgFiniteTermination) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 8; ++n) {
    // M^T M + n I is SPD; symmetrize exactly by construction.
    const auto m = oracle::random_vector(n * n, rng);
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += m[k * n + i] * m[k * n + j];
        if (i == j) s += static_cast<double>(n);
        d[i * n + j] = d[j * n + i] = s;
      }
    }
    const auto a = dense(n, d);
    const auto b = oracle::random_vector(n, rng);
    const auto r = run(a, b, cfg(Method::CG, 1e-12));
    EXPECT_TRUE(r.report.converged) << "n=" << n;
    EXPECT_LE(r.report.iterations, n + 1) << "n=" << n;
  }
}

TEST_F(Solvers, GmresSkew) {
  const auto a = dense(2, {0, 1, -1, 0});
  const std::vector<double> b{1, 0};
  const auto r = run(a, b, cfg(Method::GMRES));
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.iterations, 2u);
  EXPECT_NEAR(r.x[0], 0.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
}

// r0 = b = e1 and A r0 = -e2, so the shadow product vanishes at step one.
TEST_F(Solvers, BicgstabEngineeredBreakdown) {
  const auto a = dense(2, {0, 1, -1, 0});
  EXPECT_EQ(code_of([&] { run(a, {1, 0}, cfg(Method::BiCGSTAB)); }), ErrorCode::Breakdown);
  EXPECT_EQ(dev.live_count(), 0u);
}

TEST_F(Solvers, NonsymmetricConvectionDiffusion) {
  const auto a = simt::gen_convection_diffusion(10);
  const auto b = simt::random_vector(100, 42);
  const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
  auto c = cfg(Method::GMRES, 1e-8);
  c.restart = 30;
  const auto g = run(a, b, c);
  const auto s = run(a, b, cfg(Method::BiCGSTAB, 1e-8));
  for (const auto* r : {&g, &s}) {
    EXPECT_TRUE(r->report.converged);
    EXPECT_LE(r->report.final_residual(), 1e-8);
    EXPECT_LE(oracle::inf_norm_diff(r->x, x_star), 1e-6);
    expect_honest(a, b, *r);
  }
  EXPECT_LE(oracle::inf_norm_diff(g.x, s.x), 1e-6);
}

TEST_F(Solvers, GmresResidualNonIncreasingWithinCycle) {
  const auto a = simt::gen_convection_diffusion(12);
  const auto b = simt::random_vector(144, 1);
  auto c = cfg(Method::GMRES, 1e-10);
  c.restart = 10;
  const auto r = run(a, b, c);
  EXPECT_TRUE(r.report.converged);
  const auto& h = r.report.residual_history;
  for (std::size_t cycle = 0; cycle * c.restart + 1 < h.size(); ++cycle) {
    const std::size_t begin = cycle * c.restart;
    const std::size_t end = std::min(h.size() - 1, begin + c.restart - 1);
    for (std::size_t i = begin + 1; i <= end; ++i) {
      EXPECT_LE(h[i], h[i - 1] * (1.0 + 1e-10)) << "step " << i;
    }
  }
}

TEST_F(Solvers, JacobiDominant) {
  std::mt19937_64 rng(17);
  const auto a = oracle::diagonally_dominant(100, 0.05, rng);
  const auto b = oracle::random_vector(100, rng);
  const auto r = run(a, b, cfg(Method::Jacobi, 1e-10));
  EXPECT_TRUE(r.report.converged);
  const auto& h = r.report.residual_history;
  // Trend: the residual shrinks over every window of five sweeps.
  for (std::size_t i = 5; i < h.size(); ++i) EXPECT_LT(h[i], h[i - 5]) << "sweep " << i;
  const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
  EXPECT_LE(oracle::inf_norm_diff(r.x, x_star) / oracle::inf_norm(x_star), 1e-7);
  expect_honest(a, b, r);
}

TEST_F(Solvers, JacobiNonDominantDoesNotConverge) {
  const auto a = dense(2, {1, 2, -2, 1});
  const std::vector<double> b{1, 1};
  const auto r = run(a, b, cfg(Method::Jacobi, 1e-8, 50));
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 50u);
  // Spectral radius of the iteration matrix is 2: the residual grows.
  EXPECT_GT(oracle::relative_residual(oracle::to_dense(a), b, r.x), 1.0);
  expect_honest(a, b, r);
}

TEST_F(Solvers, GaussSeidelDominant) {
  std::mt19937_64 rng(23);
  const auto a = oracle::diagonally_dominant(100, 0.05, rng);
  const auto b = oracle::random_vector(100, rng);
  const auto r = run(a, b, cfg(Method::GaussSeidel, 1e-10));
  EXPECT_TRUE(r.report.converged);
  const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
  EXPECT_LE(oracle::inf_norm_diff(r.x, x_star), 1e-8);
}

TEST_F(Solvers, GaussSeidelBeatsJacobiOnTridiagonal) {
  const auto a = simt::gen_tridiagonal(32);
  const auto b = simt::random_vector(32, 42);
  const auto j = run(a, b, cfg(Method::Jacobi, 1e-6, 20000));
  const auto g = run(a, b, cfg(Method::GaussSeidel, 1e-6, 20000));
  ASSERT_TRUE(j.report.converged);
  ASSERT_TRUE(g.report.converged);
  EXPECT_LT(g.report.iterations, j.report.iterations);
}

TEST_F(Solvers, OracleAgreementAtTightTolerance) {
  const auto spd = simt::gen_poisson(6);
  const auto nonsym = simt::gen_convection_diffusion(6);
  const auto b = simt::random_vector(36, 9);
  for (Method m : kAllMethods) {
    const auto& a = (m == Method::CG) ? spd : nonsym;
    const auto r = run(a, b, cfg(m, 1e-10, 100000));
    ASSERT_TRUE(r.report.converged) << to_string(m);
    const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
    EXPECT_LE(oracle::inf_norm_diff(r.x, x_star) / oracle::inf_norm(x_star), 1e-7)
        << to_string(m);
    expect_honest(a, b, r);
  }
}

TEST_F(Solvers, ZeroRightHandSide) {
  const auto a = simt::gen_poisson(3);
  const std::vector<double> b(9, 0.0);
  for (Method m : kAllMethods) {
    const auto r = run(a, b, cfg(m));
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 0u);
    EXPECT_EQ(r.x, b);
  }
}

TEST_F(Solvers, ConfigValidation) {
  const auto a = simt::gen_poisson(2);
  const std::vector<double> b(4, 1.0);
  auto c = cfg(Method::CG);
  c.tol = 0.0;
  EXPECT_EQ(code_of([&] { run(a, b, c); }), ErrorCode::InvalidArgument);
  c = cfg(Method::GMRES);
  c.restart = 0;
  EXPECT_EQ(code_of([&] { run(a, b, c); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { run(a, std::vector<double>(3, 1.0), cfg(Method::CG)); }),
            ErrorCode::DimensionMismatch);
  const auto rect = simt::csr_from_dense<double>(1, 2, std::vector<double>{1, 2});
  EXPECT_EQ(code_of([&] { run(rect, {1}, cfg(Method::GMRES)); }), ErrorCode::DimensionMismatch);
}

TEST_F(Solvers, ReportShape) {
  const auto a = simt::gen_poisson(5);
  const auto b = simt::random_vector(25, 3);
  const auto r = run(a, b, cfg(Method::CG, 1e-6));
  const auto& rep = r.report;
  EXPECT_EQ(rep.n, 25u);
  EXPECT_EQ(rep.max_iter, 250u);
  EXPECT_EQ(rep.residual_history.size(), rep.iterations + 1);
  EXPECT_EQ(rep.residual_history.front(), 1.0);
  EXPECT_LE(rep.iterations, rep.max_iter);
  EXPECT_EQ(rep.threads_per_block, 256u);
  EXPECT_EQ(rep.grid_blocks, 1u);
  for (double t : rep.step_seconds) EXPECT_GE(t, 0.0);
  EXPECT_GT(rep.seconds(simt::FlowStep::Execute), 0.0);
  EXPECT_NEAR(rep.device_seconds(),
              rep.seconds(simt::FlowStep::CopyIn) + rep.seconds(simt::FlowStep::Execute) +
                  rep.seconds(simt::FlowStep::CopyBack),
              1e-15);
}

TEST_F(Solvers, ResidualHonestyEveryMethod) {
  const auto b = simt::random_vector(49, 5);
  for (Method m : kAllMethods) {
    const auto a = (m == Method::CG) ? simt::gen_poisson(7) : simt::gen_convection_diffusion(7);
    const auto r = run(a, b, cfg(m, 1e-9, 50000));
    ASSERT_TRUE(r.report.converged) << to_string(m);
    expect_honest(a, b, r);
  }
}

TEST_F(Solvers, SinglePrecision) {
  const auto a = simt::gen_poisson(8);
  const auto b = simt::random_vector(64, 42);
  auto c = cfg(Method::CG, 1e-5);
  c.kind = ElemKind::F32;
  const auto r32 = run(a, b, c);
  c.kind = ElemKind::F64;
  const auto r64 = run(a, b, c);
  ASSERT_TRUE(r32.report.converged);
  ASSERT_TRUE(r64.report.converged);
  const auto d = oracle::to_dense(a);
  EXPECT_LE(oracle::relative_residual(d, b, r64.x), oracle::relative_residual(d, b, r32.x));
  for (Method m : {Method::GMRES, Method::BiCGSTAB, Method::Jacobi, Method::GaussSeidel}) {
    auto c32 = cfg(m, 1e-4, 5000);
    c32.kind = ElemKind::F32;
    const auto r = run(a, b, c32);
    EXPECT_TRUE(r.report.converged) << to_string(m);
  }
}

TEST(SolverProperty, WorkerCountInvariance) {
  const auto spd = simt::gen_poisson(9);
  const auto nonsym = simt::gen_convection_diffusion(9);
  const auto b = simt::random_vector(81, 42);
  for (Method m : kAllMethods) {
    const auto& a = (m == Method::CG) ? spd : nonsym;
    std::vector<std::pair<std::vector<double>, std::vector<double>>> runs;
    for (unsigned p : {1u, 2u, 4u, 8u}) {
      simt::Device dev;
      simt::Executor ex(dev, simt::ExecutorOptions{p});
      SolverConfig c = cfg(m, 1e-8, 5000);
      c.block_size = 16;  // several blocks, so workers actually share a launch
      const auto r = simt::solve(ex, a, b, c);
      runs.emplace_back(r.x, r.report.residual_history);
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
      EXPECT_EQ(runs[i].first, runs[0].first) << to_string(m);
      EXPECT_EQ(runs[i].second, runs[0].second) << to_string(m);
    }
  }
}

// The sequential host baseline solves the same systems.
TEST(Reference, MatchesOracle) {
  const auto spd = simt::gen_poisson(6);
  const auto nonsym = simt::gen_convection_diffusion(6);
  const auto b = simt::random_vector(36, 9);
  for (Method m : kAllMethods) {
    const auto& a = (m == Method::CG) ? spd : nonsym;
    const auto r = simt::reference::solve(a, b, cfg(m, 1e-10, 100000));
    ASSERT_TRUE(r.report.converged) << to_string(m);
    const auto x_star = oracle::lu_solve(oracle::to_dense(a), b);
    EXPECT_LE(oracle::inf_norm_diff(r.x, x_star) / oracle::inf_norm(x_star), 1e-7);
    const double truth = oracle::recomputed_residual(oracle::to_dense(a), b, r.x);
    EXPECT_LE(std::abs(r.report.final_residual() - truth), 1e-12 * truth);
  }
}

TEST(Reference, Kernels) {
  std::vector<double> y{1, 2};
  simt::reference::axpy<double>(2.0, std::vector<double>{3, 4}, y);
  EXPECT_EQ(y, (std::vector<double>{7, 10}));
  EXPECT_EQ(simt::reference::dot<double>(y, y), 149.0);
  simt::DenseMatrix<double> c(2, 2);
  simt::reference::gemm(1.0, simt::DenseMatrix<double>(2, 2, {1, 2, 3, 4}),
                        simt::DenseMatrix<double>(2, 2, {5, 6, 7, 8}), 0.0, c);
  EXPECT_EQ(c.data, (std::vector<double>{19, 22, 43, 50}));
}

TEST(SolverNames, ParseAndPrint) {
  for (Method m : kAllMethods) EXPECT_EQ(simt::parse_method(to_string(m)), m);
  EXPECT_EQ(simt::parse_method("GS"), Method::GaussSeidel);
  EXPECT_EQ(simt::parse_method("Gauss_Seidel"), Method::GaussSeidel);
  EXPECT_FALSE(simt::parse_method("sor").has_value());
  EXPECT_EQ(simt::kFlowSteps, 9u);
  for (std::size_t i = 0; i < simt::kFlowSteps; ++i) {
    EXPECT_FALSE(simt::describe(static_cast<simt::FlowStep>(i)).empty());
  }
  EXPECT_EQ(simt::breakdown_threshold(ElemKind::F64), 1e-30);
  EXPECT_EQ(simt::breakdown_threshold(ElemKind::F32), 1e-20);
}

}  // namespace
