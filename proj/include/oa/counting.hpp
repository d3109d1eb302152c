#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oa/design.hpp"
#include "oa/errors.hpp"
#include "oa/rational.hpp"

namespace oa {

/// Coefficients whose modulus is at most this are treated as zero on mixed-level designs.
inline constexpr double kZeroTolerance = 1e-9;
/// Largest distance from a nonnegative integer accepted when reconstructing counts.
inline constexpr double kCountTolerance = 1e-6;

/// A fraction as multiplicities over the runs of the full factorial (lexicographic order).
class CountingVector {
 public:
  CountingVector(DesignSpace design, std::vector<std::int64_t> counts)
      : design_(std::move(design)), counts_(std::move(counts)) {
    if (counts_.size() != design_.size()) {
      throw DimensionError("counting vector has " + std::to_string(counts_.size()) +
                           " entries, design has " + std::to_string(design_.size()) + " runs");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] < 0) {
        throw DomainError("negative multiplicity at run " + std::to_string(i));
      }
      runs_ += counts_[i];
    }
  }

  /// Multiset of runs -> counting vector. Repeated runs add up.
  static CountingVector from_runs(const DesignSpace& design, std::span<const Point> runs) {
    std::vector<std::int64_t> counts(design.size(), 0);
    for (const auto& p : runs) ++counts[design.index_of(p)];
    return CountingVector(design, std::move(counts));
  }

  static CountingVector full_factorial(const DesignSpace& design) {
    return CountingVector(design, std::vector<std::int64_t>(design.size(), 1));
  }

  const DesignSpace& design() const noexcept { return design_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::size_t size() const noexcept { return counts_.size(); }
  /// n, the number of runs of the fraction.
  std::int64_t runs() const noexcept { return runs_; }

  bool is_single_replicate() const {
    return std::all_of(counts_.begin(), counts_.end(), [](auto c) { return c <= 1; });
  }

  std::int64_t sum_of_squares() const {
    std::int64_t s = 0;
    for (auto c : counts_) s += c * c;
    return s;
  }

  /// Runs of the fraction, repeated according to multiplicity.
  std::vector<Point> to_runs() const {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(runs_));
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      for (std::int64_t r = 0; r < counts_[i]; ++r) out.push_back(design_.point_at(i));
    }
    return out;
  }

  friend bool operator==(const CountingVector& a, const CountingVector& b) {
    return a.design_ == b.design_ && a.counts_ == b.counts_;
  }

 private:
  DesignSpace design_;
  std::vector<std::int64_t> counts_;
  std::int64_t runs_ = 0;
};

/// Coefficients c_alpha of the counting function R = sum_alpha c_alpha X^alpha.
///
/// On all-binary designs the table is exact: it stores the integers #D * c_alpha.
class CoefficientTable {
 public:
  CoefficientTable(DesignSpace design, std::vector<std::complex<double>> values)
      : design_(std::move(design)), values_(std::move(values)) {
    check_size(values_.size());
  }

  /// Exact table from the integers #D * c_alpha; binary designs only.
  static CoefficientTable from_scaled(DesignSpace design, std::vector<std::int64_t> scaled) {
    if (!design.is_binary()) throw DomainError("exact coefficient tables need an all-binary design");
    const double card = static_cast<double>(design.size());
    std::vector<std::complex<double>> values(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) values[i] = static_cast<double>(scaled[i]) / card;
    CoefficientTable t(std::move(design), std::move(values));
    t.scaled_ = std::move(scaled);
    return t;
  }

  const DesignSpace& design() const noexcept { return design_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_exact() const noexcept { return scaled_.has_value(); }

  std::complex<double> operator[](std::size_t alpha) const { return values_[alpha]; }
  std::complex<double> at(const Exponent& alpha) const { return values_[design_.index_of(alpha)]; }
  std::complex<double> constant() const { return values_[0]; }

  /// #D * c_alpha, exact tables only.
  std::int64_t scaled(std::size_t alpha) const { return exact_or_throw()[alpha]; }
  std::span<const std::int64_t> scaled_values() const { return exact_or_throw(); }
  Rational exact(std::size_t alpha) const {
    return Rational(scaled(alpha), static_cast<std::int64_t>(design_.size()));
  }

  bool is_zero(std::size_t alpha) const {
    if (scaled_) return (*scaled_)[alpha] == 0;
    return std::abs(values_[alpha]) <= kZeroTolerance;
  }

  std::span<const std::complex<double>> values() const noexcept { return values_; }

 private:
  void check_size(std::size_t n) const {
    if (n != design_.size()) {
      throw DimensionError("coefficient table has " + std::to_string(n) + " entries, design has " +
                           std::to_string(design_.size()) + " exponents");
    }
  }
  const std::vector<std::int64_t>& exact_or_throw() const {
    if (!scaled_) throw DomainError("coefficient table is not exact");
    return *scaled_;
  }

  DesignSpace design_;
  std::vector<std::complex<double>> values_;
  std::optional<std::vector<std::int64_t>> scaled_;
};

namespace detail {

/// In-place transform along every factor axis: out[a] = sum_k in[k] * w^(sign*k*a), w = exp(2*pi*i/s).
inline void axis_transform(const DesignSpace& design, std::vector<std::complex<double>>& data,
                           int sign) {
  std::vector<std::complex<double>> fiber;
  std::vector<std::complex<double>> out;
  for (std::size_t j = 0; j < design.factors(); ++j) {
    const int s = design.level(j);
    const std::size_t stride = design.stride(j);
    const std::size_t block = stride * static_cast<std::size_t>(s);
    fiber.resize(static_cast<std::size_t>(s));
    out.resize(static_cast<std::size_t>(s));
    for (std::size_t base = 0; base < data.size(); base += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        for (int k = 0; k < s; ++k) fiber[k] = data[base + offset + static_cast<std::size_t>(k) * stride];
        for (int a = 0; a < s; ++a) {
          std::complex<double> acc = 0;
          for (int k = 0; k < s; ++k) acc += fiber[k] * root_of_unity(sign * k * a, s);
          out[a] = acc;
        }
        for (int a = 0; a < s; ++a) data[base + offset + static_cast<std::size_t>(a) * stride] = out[a];
      }
    }
  }
}

/// Integer Walsh-Hadamard transform; its own inverse up to a factor 2^m.
inline void walsh_hadamard(std::vector<std::int64_t>& data) {
  for (std::size_t h = 1; h < data.size(); h <<= 1) {
    for (std::size_t i = 0; i < data.size(); i += 2 * h) {
      for (std::size_t k = i; k < i + h; ++k) {
        const auto x = data[k];
        const auto y = data[k + h];
        data[k] = x + y;
        data[k + h] = x - y;
      }
    }
  }
}

}  // namespace detail

/// c_alpha = (1/#D) sum_zeta Y[zeta] conj(X^alpha(zeta)).
inline CoefficientTable coefficients_from_counts(const CountingVector& y) {
  const auto& design = y.design();
  if (design.is_binary()) {
    std::vector<std::int64_t> scaled(y.counts().begin(), y.counts().end());
    detail::walsh_hadamard(scaled);
    return CoefficientTable::from_scaled(design, std::move(scaled));
  }
  std::vector<std::complex<double>> data(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) data[i] = static_cast<double>(y[i]);
  detail::axis_transform(design, data, -1);
  const double card = static_cast<double>(design.size());
  for (auto& v : data) v /= card;
  return CoefficientTable(design, std::move(data));
}

/// Evaluates R at every run. Throws NotCountingFunction unless every value is a nonnegative integer.
inline CountingVector counts_from_coefficients(const CoefficientTable& c) {
  const auto& design = c.design();
  std::vector<std::int64_t> counts(design.size());
  if (c.is_exact()) {
    std::vector<std::int64_t> values(c.scaled_values().begin(), c.scaled_values().end());
    detail::walsh_hadamard(values);
    const auto card = static_cast<std::int64_t>(design.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] % card != 0 || values[i] < 0) {
        throw NotCountingFunction("R(run " + std::to_string(i) + ") = " +
                                  to_string(Rational(values[i], card)) +
                                  " is not a nonnegative integer");
      }
      counts[i] = values[i] / card;
    }
    return CountingVector(design, std::move(counts));
  }
  std::vector<std::complex<double>> data(c.values().begin(), c.values().end());
  detail::axis_transform(design, data, +1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double rounded = std::round(data[i].real());
    if (std::abs(data[i] - std::complex<double>(rounded, 0.0)) > kCountTolerance || rounded < 0) {
      throw NotCountingFunction("R(run " + std::to_string(i) + ") = (" +
                                std::to_string(data[i].real()) + ", " +
                                std::to_string(data[i].imag()) +
                                ") is not a nonnegative integer");
    }
    counts[i] = static_cast<std::int64_t>(rounded);
  }
  return CountingVector(design, std::move(counts));
}

/// Counts of the projection of a fraction onto the factors in `subset` (0-based, ascending).
struct MarginalTable {
  std::vector<int> subset;
  std::vector<int> levels;
  /// Cell counts in lexicographic order of the level combinations.
  std::vector<std::int64_t> counts;

  bool is_constant() const {
    return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
  }
};

namespace detail {

inline void check_subset(const DesignSpace& design, std::span<const int> subset) {
  if (subset.empty()) throw DomainError("factor subset is empty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || static_cast<std::size_t>(subset[i]) >= design.factors()) {
      throw DomainError("factor index " + std::to_string(subset[i]) + " out of range");
    }
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw DomainError("factor subset must be strictly increasing");
    }
  }
}

/// Cell index of a run inside the marginal on `subset`.
inline std::size_t marginal_cell(const DesignSpace& design, std::span<const int> subset,
                                 std::size_t run) {
  std::size_t cell = 0;
  for (int j : subset) {
    cell = cell * static_cast<std::size_t>(design.level(static_cast<std::size_t>(j))) +
           static_cast<std::size_t>(design.digit(run, static_cast<std::size_t>(j)));
  }
  return cell;
}

}  // namespace detail

inline MarginalTable marginal_counts(const CountingVector& y, std::span<const int> subset) {
  const auto& design = y.design();
  detail::check_subset(design, subset);
  MarginalTable table;
  table.subset.assign(subset.begin(), subset.end());
  std::size_t cells = 1;
  for (int j : subset) {
    table.levels.push_back(design.level(static_cast<std::size_t>(j)));
    cells *= static_cast<std::size_t>(table.levels.back());
  }
  table.counts.assign(cells, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    table.counts[detail::marginal_cell(design, subset, i)] += y[i];
  }
  return table;
}

inline MarginalTable marginal_counts(const CountingVector& y, std::initializer_list<int> subset) {
  return marginal_counts(y, std::span<const int>(subset.begin(), subset.size()));
}

/// Largest t such that every c_alpha with 1 <= |alpha|_0 <= t vanishes; m for a multiple
/// of the full factorial.
inline int strength(const CoefficientTable& c) {
  const auto& design = c.design();
  const int m = static_cast<int>(design.factors());
  std::vector<bool> clean(static_cast<std::size_t>(m) + 1, true);
  for (std::size_t a = 1; a < c.size(); ++a) {
    if (!c.is_zero(a)) clean[static_cast<std::size_t>(design.weight_of(a))] = false;
  }
  for (int t = 1; t <= m; ++t) {
    if (!clean[static_cast<std::size_t>(t)]) return t - 1;
  }
  return m;
}

inline int strength(const CountingVector& y) {
  if (y.runs() == 0) throw DomainError("strength of the empty fraction is undefined");
  return strength(coefficients_from_counts(y));
}

/// OA test through the counting-function coefficients.
inline bool is_oa(const CountingVector& y, int t) {
  const int m = static_cast<int>(y.design().factors());
  if (t < 0 || t > m) throw DomainError("strength " + std::to_string(t) + " out of range 0.." + std::to_string(m));
  if (t == 0) return true;
  if (y.runs() == 0) return false;
  return strength(y) >= t;
}

/// OA test through marginals: every projection onto t factors is a multiple full factorial.
inline bool is_oa_combinatorial(const CountingVector& y, int t) {
  const int m = static_cast<int>(y.design().factors());
  if (t < 0 || t > m) throw DomainError("strength " + std::to_string(t) + " out of range 0.." + std::to_string(m));
  if (t == 0) return true;
  if (y.runs() == 0) return false;
  for (const auto& subset : combinations(m, t)) {
    if (!marginal_counts(y, subset).is_constant()) return false;
  }
  return true;
}

/// Strength computed from marginals only: largest t with all t-marginals constant.
inline int combinatorial_strength(const CountingVector& y) {
  if (y.runs() == 0) throw DomainError("strength of the empty fraction is undefined");
  const int m = static_cast<int>(y.design().factors());
  for (int t = 1; t <= m; ++t) {
    if (!is_oa_combinatorial(y, t)) return t - 1;
  }
  return m;
}

}  // namespace oa
