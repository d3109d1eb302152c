#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oa/cone.hpp"
#include "oa/counting.hpp"
#include "oa/design.hpp"
#include "oa/detail/completion.hpp"
#include "oa/detail/contejean_devie.hpp"
#include "oa/detail/solver_common.hpp"
#include "oa/errors.hpp"

namespace oa {

/// Minimal generating set of OA(., D, t) under nonnegative integer combinations.
///
/// Elements are kept in canonical order: by run size, then lexicographically.
class HilbertBasis {
 public:
  HilbertBasis(DesignSpace design, int strength, std::vector<CountingVector> elements)
      : design_(std::move(design)), strength_(strength), elements_(std::move(elements)) {
    for (const auto& e : elements_) {
      if (!(e.design() == design_)) throw DimensionError("basis element lives on a different design");
      if (e.runs() == 0) throw DomainError("basis elements must be nonzero");
    }
    std::sort(elements_.begin(), elements_.end(), canonical_less);
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      if (elements_[i - 1] == elements_[i]) throw DomainError("duplicate basis element");
    }
  }

  const DesignSpace& design() const noexcept { return design_; }
  int strength() const noexcept { return strength_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<CountingVector>& elements() const noexcept { return elements_; }
  const CountingVector& operator[](std::size_t i) const { return elements_[i]; }

  /// run size -> number of elements.
  std::map<std::int64_t, std::size_t> size_histogram() const {
    std::map<std::int64_t, std::size_t> h;
    for (const auto& e : elements_) ++h[e.runs()];
    return h;
  }

  static bool canonical_less(const CountingVector& a, const CountingVector& b) {
    if (a.runs() != b.runs()) return a.runs() < b.runs();
    return std::lexicographical_compare(a.counts().begin(), a.counts().end(), b.counts().begin(), b.counts().end());
  }

  friend bool operator==(const HilbertBasis& a, const HilbertBasis& b) {
    return a.design_ == b.design_ && a.strength_ == b.strength_ && a.elements_ == b.elements_;
  }

 private:
  DesignSpace design_;
  int strength_;
  std::vector<CountingVector> elements_;
};

enum class HilbertAlgorithm { completion, contejean_devie };

struct HilbertOptions {
  HilbertAlgorithm algorithm = HilbertAlgorithm::completion;
  std::size_t max_elements = 20'000'000;
  /// 0 means no time limit.
  double max_seconds = 0.0;
  /// 0 means all hardware threads.
  unsigned threads = 1;
  std::function<void(const std::string&)> log;
};

inline HilbertBasis hilbert_basis(const ConstraintMatrix& M, const HilbertOptions& options = {}) {
  std::vector<std::int64_t> rows(M.entries().begin(), M.entries().end());
  detail::SolverLimits limits{options.max_elements, options.max_seconds, options.threads, options.log};
  const auto found = options.algorithm == HilbertAlgorithm::completion
                         ? detail::completion_solve(rows, M.rows(), M.cols(), limits)
                         : detail::contejean_devie_solve(rows, M.rows(), M.cols(), limits);
  std::vector<CountingVector> elements;
  elements.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto* r = found.row(i);
    elements.emplace_back(M.design(), std::vector<std::int64_t>(r, r + found.width));
  }
  return HilbertBasis(M.design(), M.strength(), std::move(elements));
}

/// Every element is a nonzero member of the cone.
inline bool verify_soundness(const HilbertBasis& basis) {
  const auto M = constraint_matrix(basis.design(), basis.strength());
  return std::all_of(basis.elements().begin(), basis.elements().end(),
                     [&](const CountingVector& e) { return e.runs() > 0 && is_member(e, M); });
}

/// No element b has another element b' <= b with b - b' in the cone.
inline bool verify_minimality(const HilbertBasis& basis) {
  const auto M = constraint_matrix(basis.design(), basis.strength());
  const auto& el = basis.elements();
  const std::size_t width = basis.design().size();
  std::vector<std::uint64_t> support(el.size(), 0);
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t k = 0; k < width; ++k) {
      if (el[i][k] > 0) support[i] |= std::uint64_t{1} << (k & 63);
    }
  }
  std::vector<std::int64_t> diff(width);
  // Canonical order puts smaller run sizes first, so only earlier elements can lie below.
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if ((support[k] & ~support[i]) != 0 || el[k].runs() >= el[i].runs()) continue;
      bool below = true;
      for (std::size_t c = 0; c < width && below; ++c) {
        diff[c] = el[i][c] - el[k][c];
        below = diff[c] >= 0;
      }
      if (!below) continue;
      if (is_member(CountingVector(basis.design(), diff), M)) return false;
    }
  }
  return true;
}

/// y as a nonnegative integer combination of basis elements: (element index, coefficient)
/// pairs, or nullopt when y is not in the cone. Any valid decomposition may be returned.
inline std::optional<std::vector<std::pair<std::size_t, std::int64_t>>> decompose(const CountingVector& y,
                                                                                   const HilbertBasis& basis) {
  if (!(y.design() == basis.design())) throw DimensionError("vector and basis live on different designs");
  if (!is_member(y, constraint_matrix(basis.design(), basis.strength()))) return std::nullopt;

  const auto& el = basis.elements();
  std::vector<std::int64_t> rest(y.counts().begin(), y.counts().end());
  std::vector<std::size_t> chosen;
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> failed;

  // Larger elements first: they pin down more of the remainder.
  std::function<bool(std::size_t)> search = [&](std::size_t from) -> bool {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t v) { return v == 0; })) return true;
    if (failed.count({from, rest})) return false;
    for (std::size_t pos = from; pos < el.size(); ++pos) {
      const auto& b = el[el.size() - 1 - pos];
      bool fits = true;
      for (std::size_t c = 0; c < rest.size() && fits; ++c) fits = b[c] <= rest[c];
      if (!fits) continue;
      for (std::size_t c = 0; c < rest.size(); ++c) rest[c] -= b[c];
      chosen.push_back(el.size() - 1 - pos);
      if (search(pos)) return true;
      chosen.pop_back();
      for (std::size_t c = 0; c < rest.size(); ++c) rest[c] += b[c];
    }
    failed.insert({from, rest});
    return false;
  };
  if (!search(0)) {
    throw Error("cone member has no decomposition over the basis; the basis is incomplete");
  }
  std::map<std::size_t, std::int64_t> coeff;
  for (auto i : chosen) ++coeff[i];
  return std::vector<std::pair<std::size_t, std::int64_t>>(coeff.begin(), coeff.end());
}

/// "r #D" header, then one element per line in canonical order.
inline void write_basis(std::ostream& out, const HilbertBasis& basis) {
  out << basis.size() << ' ' << basis.design().size() << '\n';
  for (const auto& e : basis.elements()) {
    for (std::size_t c = 0; c < e.size(); ++c) {
      if (c) out << ' ';
      out << e[c];
    }
    out << '\n';
  }
}

inline void write_basis(const std::string& path, const HilbertBasis& basis) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_basis(out, basis);
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// Reads a basis file for the given design and strength. Rows may come in any order
/// (files from external tools); every row must be a nonzero cone member.
inline HilbertBasis read_basis(std::istream& in, const DesignSpace& design, int strength) {
  const auto m = read_matrix(in);
  if (m.cols != design.size()) {
    throw DimensionError("basis file has width " + std::to_string(m.cols) + ", design has " +
                         std::to_string(design.size()) + " runs");
  }
  const auto M = constraint_matrix(design, strength);
  std::vector<CountingVector> elements;
  elements.reserve(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::vector<std::int64_t> row(m.entries.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                                  m.entries.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols));
    for (auto v : row) {
      if (v < 0) throw FormatError("negative entry in basis row " + std::to_string(r + 1));
    }
    CountingVector y(design, std::move(row));
    if (y.runs() == 0) throw FormatError("zero row " + std::to_string(r + 1) + " in basis file");
    if (!is_member(y, M)) {
      throw DomainError("basis row " + std::to_string(r + 1) + " is not an OA of strength " + std::to_string(strength));
    }
    elements.push_back(std::move(y));
  }
  return HilbertBasis(design, strength, std::move(elements));
}

inline HilbertBasis read_basis(const std::string& path, const DesignSpace& design, int strength) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_basis(in, design, strength);
}

}  // namespace oa
