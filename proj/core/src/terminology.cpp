// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/terminology.hpp"

#include <array>
#include <cctype>

#include "simt/error.hpp"

namespace simt {

namespace {

constexpr std::array<TermEntry, 3> kTable{{
    {"thread", "work-item"},
    {"thread block", "work-group"},
    {"grid", "nd-range"},
}};

std::string normalize(std::string_view term) {
  std::string out;
  bool pending_space = false;
  for (const char ch : term) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace

std::span<const TermEntry> terminology_table() noexcept { return kTable; }

std::string terminology_lookup(std::string_view term) {
  const std::string key = normalize(term);
  for (const TermEntry& e : kTable) {
    if (key == e.cuda_term) return std::string(e.opencl_term);
    if (key == e.opencl_term) return std::string(e.cuda_term);
  }
  std::string known;
  for (const TermEntry& e : kTable) {
    if (!known.empty()) known += ", ";
    known += std::string(e.cuda_term) + ", " + std::string(e.opencl_term);
  }
  throw Error(ErrorCode::UnknownTerm,
              "unknown term '" + std::string(term) + "'; known terms: " + known);
}

}  // namespace simt
