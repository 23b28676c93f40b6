// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simt {

enum class ErrorCode {
  CapacityExceeded,
  LengthMismatch,
  KindMismatch,
  UseAfterFree,
  BlockTooLarge,
  SharedMemoryLimit,
  InvalidLaunch,
  DataRace,
  DimensionMismatch,
  ZeroDiagonal,
  Breakdown,
  NotSymmetric,
  MalformedInput,
  IndexOutOfBounds,
  DuplicateEntry,
  UnknownTerm,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI) can branch on the category without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Jacobi/Gauss-Seidel pivot failure; names the offending row.
class ZeroDiagonalError : public Error {
 public:
  explicit ZeroDiagonalError(std::size_t row);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace simt
