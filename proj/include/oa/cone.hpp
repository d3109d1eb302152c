#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "oa/counting.hpp"
#include "oa/design.hpp"
#include "oa/errors.hpp"

namespace oa {

/// Equality rows M with OA(., D, t) = { y >= 0 integer : M y = 0 }.
///
/// One row per t-subset I and per non-reference cell l of the I-marginal:
/// (indicator of runs projecting to l) - (indicator of runs projecting to the
/// lexicographically first cell).
class ConstraintMatrix {
 public:
  ConstraintMatrix(DesignSpace design, int strength, std::size_t cols, std::vector<int> entries)
      : design_(std::move(design)), strength_(strength), cols_(cols), entries_(std::move(entries)) {
    if (cols_ != design_.size()) throw DimensionError("matrix width differs from design size");
    if (entries_.size() % cols_ != 0) throw DimensionError("ragged constraint matrix");
  }

  const DesignSpace& design() const noexcept { return design_; }
  int strength() const noexcept { return strength_; }
  std::size_t rows() const noexcept { return entries_.size() / cols_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const int> row(std::size_t r) const {
    return std::span<const int>(entries_).subspan(r * cols_, cols_);
  }
  std::span<const int> entries() const noexcept { return entries_; }

  /// M y.
  std::vector<std::int64_t> apply(std::span<const std::int64_t> y) const {
    if (y.size() != cols_) throw DimensionError("vector length differs from matrix width");
    std::vector<std::int64_t> out(rows(), 0);
    for (std::size_t r = 0; r < rows(); ++r) {
      const auto coeffs = row(r);
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) acc += coeffs[c] * y[c];
      out[r] = acc;
    }
    return out;
  }

 private:
  DesignSpace design_;
  int strength_;
  std::size_t cols_;
  std::vector<int> entries_;
};

inline ConstraintMatrix constraint_matrix(const DesignSpace& design, int t) {
  const int m = static_cast<int>(design.factors());
  if (t < 1 || t > m) {
    throw DomainError("strength " + std::to_string(t) + " out of range 1.." + std::to_string(m));
  }
  const std::size_t cols = design.size();
  std::vector<int> entries;
  for (const auto& subset : combinations(m, t)) {
    std::size_t cells = 1;
    for (int j : subset) cells *= static_cast<std::size_t>(design.level(static_cast<std::size_t>(j)));
    std::vector<std::size_t> cell_of(cols);
    for (std::size_t run = 0; run < cols; ++run) cell_of[run] = detail::marginal_cell(design, subset, run);
    for (std::size_t cell = 1; cell < cells; ++cell) {
      for (std::size_t run = 0; run < cols; ++run) {
        entries.push_back((cell_of[run] == cell ? 1 : 0) - (cell_of[run] == 0 ? 1 : 0));
      }
    }
  }
  return ConstraintMatrix(design, t, cols, std::move(entries));
}

/// y >= 0 and M y = 0.
inline bool is_member(const CountingVector& y, const ConstraintMatrix& M) {
  if (y.size() != M.cols()) throw DimensionError("counting vector length differs from matrix width");
  for (auto r : M.apply(y.counts())) {
    if (r != 0) return false;
  }
  return true;
}

/// "rows cols" header then one row per line: the matrix format read by lattice tools
/// such as 4ti2. With `comment`, a leading '#' line records the equality encoding.
inline void write_matrix(std::ostream& out, const ConstraintMatrix& M, bool comment = false) {
  if (comment) {
    out << "# OA(.," << M.design().to_string() << "," << M.strength()
        << ") marginal-equality rows: M y = 0, y >= 0\n";
  }
  out << M.rows() << ' ' << M.cols() << '\n';
  for (std::size_t r = 0; r < M.rows(); ++r) {
    const auto row = M.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << '\n';
  }
}

/// Plain integer matrix in "rows cols" format; '#' lines are skipped.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;
};

namespace detail {

/// Whitespace-separated integers of a stream, skipping '#' comment lines.
inline std::vector<std::int64_t> read_integers(std::istream& in) {
  std::vector<std::int64_t> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t pos = first;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
      if (pos >= line.size()) break;
      std::size_t used = 0;
      try {
        values.push_back(std::stoll(line.substr(pos), &used));
      } catch (const std::exception&) {
        throw FormatError("not an integer: '" + line.substr(pos, line.find(' ', pos) - pos) + "'");
      }
      pos += used;
      if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
        throw FormatError("malformed integer in line '" + line + "'");
      }
    }
  }
  return values;
}

}  // namespace detail

inline IntegerMatrix read_matrix(std::istream& in) {
  auto values = detail::read_integers(in);
  if (values.size() < 2) throw FormatError("matrix file lacks its 'rows cols' header");
  if (values[0] < 0 || values[1] < 1) throw FormatError("bad matrix dimensions");
  IntegerMatrix m{static_cast<std::size_t>(values[0]), static_cast<std::size_t>(values[1]), {}};
  if (values.size() - 2 != m.rows * m.cols) {
    throw FormatError("matrix declares " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                      " entries but holds " + std::to_string(values.size() - 2));
  }
  m.entries.assign(values.begin() + 2, values.end());
  return m;
}

}  // namespace oa
