// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include "simt/csr.hpp"

namespace simt {

/// Reads a Matrix Market coordinate file with a real or integer field and
/// general or symmetric storage. Indices are 1-based in the file; symmetric
/// files are expanded to full storage.
///
/// Errors: MalformedInput for a bad banner, size line or entry line;
/// IndexOutOfBounds for coordinates outside the declared shape;
/// DuplicateEntry when a coordinate repeats (including after expansion).
CsrMatrix<double> read_matrix_market(std::istream& in);
CsrMatrix<double> load_matrix_market(const std::filesystem::path& path);

void write_matrix_market(std::ostream& out, const CsrMatrix<double>& a);

}  // namespace simt
