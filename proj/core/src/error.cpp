// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/error.hpp"

namespace simt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CapacityExceeded: return "capacity-exceeded";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::KindMismatch: return "kind-mismatch";
    case ErrorCode::UseAfterFree: return "use-after-free";
    case ErrorCode::BlockTooLarge: return "block-too-large";
    case ErrorCode::SharedMemoryLimit: return "shared-memory-limit";
    case ErrorCode::InvalidLaunch: return "invalid-launch";
    case ErrorCode::DataRace: return "data-race";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::ZeroDiagonal: return "zero-diagonal";
    case ErrorCode::Breakdown: return "breakdown";
    case ErrorCode::NotSymmetric: return "not-symmetric";
    case ErrorCode::MalformedInput: return "malformed-input";
    case ErrorCode::IndexOutOfBounds: return "index-out-of-bounds";
    case ErrorCode::DuplicateEntry: return "duplicate-entry";
    case ErrorCode::UnknownTerm: return "unknown-term";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

ZeroDiagonalError::ZeroDiagonalError(std::size_t row)
    : Error(ErrorCode::ZeroDiagonal,
            "zero or missing diagonal entry in row " + std::to_string(row)),
      row_(row) {}

}  // namespace simt
