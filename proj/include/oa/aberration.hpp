#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oa/counting.hpp"
#include "oa/design.hpp"
#include "oa/errors.hpp"
#include "oa/rational.hpp"

namespace oa {

/// Generalized word-length pattern (A_0, ..., A_m).
///
/// Exact (rational) on all-binary designs, double precision otherwise. The decimal
/// view is always available.
class Gwlp {
 public:
  Gwlp() = default;

  static Gwlp exact(std::vector<Rational> values) {
    Gwlp g;
    g.approx_.reserve(values.size());
    for (const auto& v : values) g.approx_.push_back(to_double(v));
    g.exact_ = std::move(values);
    return g;
  }

  static Gwlp approximate(std::vector<double> values) {
    Gwlp g;
    g.approx_ = std::move(values);
    return g;
  }

  std::size_t size() const noexcept { return approx_.size(); }
  bool is_exact() const noexcept { return exact_.has_value(); }
  double operator[](std::size_t j) const { return approx_.at(j); }
  std::span<const double> values() const noexcept { return approx_; }

  const Rational& exact(std::size_t j) const {
    if (!exact_) throw DomainError("GWLP is not exact");
    return exact_->at(j);
  }
  std::span<const Rational> exact_values() const {
    if (!exact_) throw DomainError("GWLP is not exact");
    return *exact_;
  }

  /// Entries equal: exactly when both are exact, within kZeroTolerance otherwise.
  bool same_entry(const Gwlp& other, std::size_t j) const {
    if (exact_ && other.exact_) return (*exact_)[j] == (*other.exact_)[j];
    return std::abs(approx_[j] - other.approx_[j]) <= kZeroTolerance;
  }

  bool less_entry(const Gwlp& other, std::size_t j) const {
    if (exact_ && other.exact_) return (*exact_)[j] < (*other.exact_)[j];
    return approx_[j] < other.approx_[j] - kZeroTolerance;
  }

  friend bool operator==(const Gwlp& a, const Gwlp& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!a.same_entry(b, j)) return false;
    }
    return true;
  }

  /// "1, 0, 0, 2/5, 1/5, 0" when exact, decimals otherwise.
  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < size(); ++j) {
      if (j) out += ", ";
      out += exact_ ? oa::to_string((*exact_)[j]) : format_decimal(approx_[j]);
    }
    return out;
  }

  std::string to_decimal_string(int digits = 6) const {
    std::string out;
    for (std::size_t j = 0; j < size(); ++j) {
      if (j) out += ", ";
      out += format_decimal(approx_[j], digits);
    }
    return out;
  }

  static std::string format_decimal(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, std::abs(v) < 0.5e-12 ? 0.0 : v);
    return buf;
  }

 private:
  std::vector<double> approx_;
  std::optional<std::vector<Rational>> exact_;
};

/// Aberrations a_alpha = |c_alpha|^2 / c_0^2, indexed like the exponents.
class AberrationTable {
 public:
  AberrationTable(DesignSpace design, std::vector<double> values,
                  std::optional<std::vector<Rational>> exact)
      : design_(std::move(design)), values_(std::move(values)), exact_(std::move(exact)) {}

  const DesignSpace& design() const noexcept { return design_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_exact() const noexcept { return exact_.has_value(); }
  double operator[](std::size_t alpha) const { return values_[alpha]; }
  double at(const Exponent& alpha) const { return values_[design_.index_of(alpha)]; }
  const Rational& exact(std::size_t alpha) const {
    if (!exact_) throw DomainError("aberration table is not exact");
    return (*exact_)[alpha];
  }

  /// A_j = sum of a_alpha over |alpha|_0 = j.
  Gwlp word_length_pattern() const {
    const std::size_t m = design_.factors();
    if (exact_) {
      std::vector<Rational> a(m + 1, Rational(0));
      for (std::size_t i = 0; i < size(); ++i) a[static_cast<std::size_t>(design_.weight_of(i))] += (*exact_)[i];
      return Gwlp::exact(std::move(a));
    }
    std::vector<double> a(m + 1, 0.0);
    for (std::size_t i = 0; i < size(); ++i) a[static_cast<std::size_t>(design_.weight_of(i))] += values_[i];
    return Gwlp::approximate(std::move(a));
  }

 private:
  DesignSpace design_;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

inline AberrationTable aberration_table(const CoefficientTable& c) {
  const auto& design = c.design();
  if (c.is_exact()) {
    const std::int64_t c0 = c.scaled(0);
    if (c0 <= 0) throw DomainError("aberrations need c_0 > 0 (empty fraction)");
    std::vector<Rational> exact(c.size());
    std::vector<double> values(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::int64_t s = c.scaled(i);
      exact[i] = Rational(s * s, c0 * c0);
      values[i] = to_double(exact[i]);
    }
    return AberrationTable(design, std::move(values), std::move(exact));
  }
  const double c0 = c.constant().real();
  if (c0 <= kZeroTolerance) throw DomainError("aberrations need c_0 > 0 (empty fraction)");
  std::vector<double> values(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) values[i] = std::norm(c[i]) / (c0 * c0);
  return AberrationTable(design, std::move(values), std::nullopt);
}

inline Gwlp gwlp(const CoefficientTable& c) { return aberration_table(c).word_length_pattern(); }

inline Gwlp gwlp(const CountingVector& y) {
  if (y.runs() == 0) throw DomainError("GWLP of the empty fraction is undefined");
  return gwlp(coefficients_from_counts(y));
}

/// a_alpha = Y^T conj(X_alpha) X_alpha^T Y / n^2, summed run by run without any transform.
/// Cross-check path for gwlp().
inline Gwlp gwlp_by_direct_sums(const CountingVector& y) {
  const auto& design = y.design();
  const std::int64_t n = y.runs();
  if (n == 0) throw DomainError("GWLP of the empty fraction is undefined");
  const std::size_t m = design.factors();
  if (design.is_binary()) {
    std::vector<Rational> a(m + 1, Rational(0));
    for (std::size_t alpha = 0; alpha < design.size(); ++alpha) {
      std::int64_t s = 0;
      for (std::size_t run = 0; run < design.size(); ++run) {
        s += y[run] * binary_character(design, run, alpha);
      }
      a[static_cast<std::size_t>(design.weight_of(alpha))] += Rational(s * s, n * n);
    }
    return Gwlp::exact(std::move(a));
  }
  std::vector<double> a(m + 1, 0.0);
  for (std::size_t alpha = 0; alpha < design.size(); ++alpha) {
    std::complex<double> s = 0;
    for (std::size_t run = 0; run < design.size(); ++run) {
      s += static_cast<double>(y[run]) * std::conj(monomial_value(design, run, alpha));
    }
    a[static_cast<std::size_t>(design.weight_of(alpha))] += std::norm(s) / static_cast<double>(n * n);
  }
  return Gwlp::approximate(std::move(a));
}

enum class GmaOrder { better, worse, equal };

inline const char* to_string(GmaOrder o) {
  switch (o) {
    case GmaOrder::better: return "better";
    case GmaOrder::worse: return "worse";
    case GmaOrder::equal: return "equal";
  }
  return "?";
}

/// Sequential minimization of (A_1, ..., A_m): the first differing entry decides.
inline GmaOrder gma_compare(const Gwlp& a, const Gwlp& b) {
  if (a.size() != b.size()) {
    throw DimensionError("GWLP lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (a.same_entry(b, j)) continue;
    return a.less_entry(b, j) ? GmaOrder::better : GmaOrder::worse;
  }
  return GmaOrder::equal;
}

/// sum_j A_j = #D * sum Y^2 / n^2.
inline Rational total_aberration(const CountingVector& y) {
  const std::int64_t n = y.runs();
  if (n == 0) throw DomainError("total aberration of the empty fraction is undefined");
  return Rational(static_cast<std::int64_t>(y.design().size()) * y.sum_of_squares(), n * n);
}

/// Closed form for A_m of an OA of strength m-1: (#D sum Y^2 - n^2) / n^2.
inline Rational last_term_formula(const CountingVector& y) {
  const int m = static_cast<int>(y.design().factors());
  if (y.runs() == 0) throw DomainError("last-term formula needs a nonempty fraction");
  const int t = strength(y);
  if (t < m - 1) {
    throw DomainError("last-term formula needs strength " + std::to_string(m - 1) +
                      ", fraction has strength " + std::to_string(t));
  }
  return total_aberration(y) - Rational(1);
}

/// Lower bound r(#D - r)/n^2 on A_m for an OA of strength m-1 with n = q #D + r runs.
inline Rational last_term_lower_bound(const DesignSpace& design, std::int64_t n) {
  if (n < 1) throw DomainError("run size must be positive");
  const auto card = static_cast<std::int64_t>(design.size());
  const std::int64_t r = n % card;
  return Rational(r * (card - r), n * n);
}

/// Sum of the last-term bounds over all (t+1)-factor subdesigns: a lower bound on A_{t+1}
/// for every OA of strength t with n runs.
inline Rational aggregated_lower_bound(const DesignSpace& design, int t, std::int64_t n) {
  const int m = static_cast<int>(design.factors());
  if (t < 0 || t + 1 > m) throw DomainError("need 0 <= t and t+1 <= m");
  Rational total(0);
  for (const auto& subset : combinations(m, t + 1)) {
    std::vector<int> levels;
    for (int j : subset) levels.push_back(design.level(static_cast<std::size_t>(j)));
    total += last_term_lower_bound(DesignSpace(std::move(levels)), n);
  }
  return total;
}

}  // namespace oa
