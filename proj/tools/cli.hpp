// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simt::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 1,
  kInputError = 2,
};

/// Entry point for the `simt` command line. `args` excludes the program
/// name. Machine-readable output (CSV) goes to `out`, the human-readable
/// report and diagnostics to `err`.
///
///   simt solve (--poisson K | --convdiff K | --mm PATH) [--method M] ...
///   simt bench (--gemm N | --poisson K | --convdiff K | --mm PATH) ...
///   simt term TERM
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simt::cli
