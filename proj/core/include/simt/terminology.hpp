// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>

namespace simt {

struct TermEntry {
  std::string_view cuda_term;
  std::string_view opencl_term;
};

/// CUDA / OpenCL equivalents for the launch hierarchy.
std::span<const TermEntry> terminology_table() noexcept;

/// Maps a term to its counterpart in the other vocabulary, in either
/// direction. Matching ignores case and surrounding whitespace. Throws
/// UnknownTerm (listing the known terms) for anything else.
std::string terminology_lookup(std::string_view term);

}  // namespace simt
