// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simt/csr.hpp"

namespace simt {

/// 5-point Laplacian on a k x k grid (n = k*k): 4 on the diagonal, -1 for
/// each grid neighbour. Symmetric positive definite.
CsrMatrix<double> gen_poisson(std::size_t k);

/// 5-point convection-diffusion operator on a k x k grid with central
/// differences for the convective term: 4 on the diagonal, -1 -/+ wind_x
/// for the west/east neighbours and -1 -/+ wind_y for south/north.
/// Nonsymmetric whenever a wind component is nonzero.
CsrMatrix<double> gen_convection_diffusion(std::size_t k, double wind_x = 0.5,
                                           double wind_y = 0.25);

/// Tridiagonal (-1, 2, -1) matrix of order n.
CsrMatrix<double> gen_tridiagonal(std::size_t n);

/// Uniform [0, 1) vector from a seeded 64-bit Mersenne Twister.
std::vector<double> random_vector(std::size_t n, std::uint64_t seed);

}  // namespace simt
