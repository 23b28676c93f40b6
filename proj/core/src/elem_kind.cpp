// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/elem_kind.hpp"

namespace simt {

std::string_view to_string(ElemKind kind) noexcept {
  switch (kind) {
    case ElemKind::F32: return "f32";
    case ElemKind::F64: return "f64";
    case ElemKind::Index: return "index";
  }
  return "?";
}

std::optional<ElemKind> parse_precision(std::string_view text) noexcept {
  if (text == "f32" || text == "float" || text == "single") return ElemKind::F32;
  if (text == "f64" || text == "double") return ElemKind::F64;
  return std::nullopt;
}

}  // namespace simt
