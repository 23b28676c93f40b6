// SPDX-FileCopyrightText: Copyright (c) 2026 The simt authors
// SPDX-License-Identifier: Apache-2.0

#include "simt/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "simt/error.hpp"

namespace simt {

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedInput,
              "Matrix Market line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

CsrMatrix<double> read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) malformed(1, "empty input");
  ++line_no;

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") malformed(line_no, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") malformed(line_no, "unsupported object '" + object + "'");
  if (format != "coordinate") malformed(line_no, "only coordinate format is supported");
  if (field != "real" && field != "integer") {
    malformed(line_no, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    malformed(line_no, "unsupported symmetry '" + symmetry + "'");
  }
  const bool symmetric = symmetry == "symmetric";

  // size line: first non-comment, non-blank line
  for (;;) {
    if (!std::getline(in, line)) malformed(line_no + 1, "missing size line");
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    break;
  }
  long long rows = -1, cols = -1, declared = -1;
  {
    std::istringstream size_line(line);
    std::string extra;
    if (!(size_line >> rows >> cols >> declared) || (size_line >> extra) || rows < 0 ||
        cols < 0 || declared < 0) {
      malformed(line_no, "expected 'rows cols nnz'");
    }
  }
  if (symmetric && rows != cols) malformed(line_no, "symmetric matrix must be square");

  std::vector<Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
  long long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if ((!line.empty() && line[0] == '%') || blank(line)) continue;
    if (seen == declared) malformed(line_no, "more entries than declared");
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    std::string extra;
    if (!(entry >> i >> j >> v) || (entry >> extra)) {
      malformed(line_no, "expected 'row col value'");
    }
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw Error(ErrorCode::IndexOutOfBounds,
                  "Matrix Market line " + std::to_string(line_no) + ": entry (" +
                      std::to_string(i) + "," + std::to_string(j) + ") outside " +
                      std::to_string(rows) + "x" + std::to_string(cols));
    }
    const auto r = static_cast<std::size_t>(i - 1);
    const auto c = static_cast<std::size_t>(j - 1);
    entries.push_back({r, c, v});
    if (symmetric && r != c) entries.push_back({c, r, v});
    ++seen;
  }
  if (seen != declared) {
    malformed(line_no, "declared " + std::to_string(declared) + " entries, found " +
                           std::to_string(seen));
  }
  return csr_from_triplets(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                           std::move(entries));
}

CsrMatrix<double> load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::MalformedInput, "cannot open '" + path.string() + "'");
  }
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix<double>& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows << ' ' << a.n_cols << ' ' << a.nnz() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      out << (i + 1) << ' ' << (a.col_idx[k] + 1) << ' ' << a.vals[k] << '\n';
    }
  }
}

}  // namespace simt
