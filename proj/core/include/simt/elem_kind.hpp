// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <type_traits>

namespace simt {

/// Element type of a buffer. F32/F64 are the two working precisions; Index
/// holds 64-bit integer structure arrays (CSR row pointers, column indices).
enum class ElemKind : std::uint8_t { F32, F64, Index };

using index_t = std::int64_t;

constexpr std::size_t width(ElemKind kind) noexcept {
  return kind == ElemKind::F32 ? 4 : 8;
}

template <typename T>
inline constexpr bool is_elem_type_v =
    std::is_same_v<T, float> || std::is_same_v<T, double> ||
    std::is_same_v<T, index_t>;

template <typename T>
constexpr ElemKind kind_of() noexcept {
  static_assert(is_elem_type_v<T>, "unsupported element type");
  if constexpr (std::is_same_v<T, float>) {
    return ElemKind::F32;
  } else if constexpr (std::is_same_v<T, double>) {
    return ElemKind::F64;
  } else {
    return ElemKind::Index;
  }
}

std::string_view to_string(ElemKind kind) noexcept;

/// Accepts "f32"/"f64" (and "float"/"double"); Index is not user-selectable.
std::optional<ElemKind> parse_precision(std::string_view text) noexcept;

/// Calls `fn` with a value-initialized float or double matching `kind`.
template <typename Fn>
decltype(auto) dispatch_precision(ElemKind kind, Fn&& fn) {
  if (kind == ElemKind::F32) {
    return fn(float{});
  }
  return fn(double{});
}

}  // namespace simt
